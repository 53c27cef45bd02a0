#include "fiberorder/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace fiberorder {

namespace {
constexpr std::size_t kDefaultElementCap = 4096;
}

std::size_t element_cap() {
  const char* env = std::getenv("FIBERORDER_SIZE_CAP");
  if (env == nullptr) return kDefaultElementCap;
  const std::string_view text(env);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    return kDefaultElementCap;
  }
  return value;
}

}  // namespace fiberorder
