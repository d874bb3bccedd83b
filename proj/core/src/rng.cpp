#include "rumor/rng.hpp"

#include "rumor/error.hpp"

namespace rumor {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(parent);
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t hash_label(const char* label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* p = label; *p != '\0'; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001b3ULL;
  }
  return h;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_spec: return "invalid-spec";
    case ErrorKind::generation_failure: return "generation-failure";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::instance_too_large: return "instance-too-large";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::degenerate_input: return "degenerate";
    case ErrorKind::empty_sample: return "empty-sample";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace rumor
