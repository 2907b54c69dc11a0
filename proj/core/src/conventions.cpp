#include "evanesim/conventions.hpp"

namespace evanesim {

std::uint64_t convention_hash() {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : kConventionLedger) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace evanesim
