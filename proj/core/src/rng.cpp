#include "svrkit/rng.hpp"

namespace svr {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, unsigned char byte) {
  h ^= byte;
  h *= kFnvPrime;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stream,
                          std::string_view key) {
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) {
    fnv_mix(h, static_cast<unsigned char>((global_seed >> (8 * i)) & 0xff));
  }
  for (char c : stream) fnv_mix(h, static_cast<unsigned char>(c));
  fnv_mix(h, 0);
  for (char c : key) fnv_mix(h, static_cast<unsigned char>(c));
  return h;
}

}  // namespace svr
