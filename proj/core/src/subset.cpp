#include "vdm/subset.hpp"

#include <sstream>

namespace vdm {

std::vector<int> subset_elements(std::uint32_t bits) {
  std::vector<int> out;
  for (int e = 1; bits != 0; ++e, bits >>= 1)
    if (bits & 1u) out.push_back(e);
  return out;
}

std::string Subset::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int e : subset_elements(bits)) {
    if (n > 9 && !first) os << ',';
    os << e;
    first = false;
  }
  return os.str();
}

Subset Subset::from_string(const std::string& s, int n) {
  std::uint32_t bits = 0;
  if (n <= 9) {
    for (char c : s) {
      if (c < '1' || c > '0' + n) throw std::invalid_argument("Subset: bad element '" + std::string(1, c) + "'");
      std::uint32_t b = bit_of(c - '0');
      if (bits & b) throw std::invalid_argument("Subset: repeated element in \"" + s + "\"");
      bits |= b;
    }
  } else if (!s.empty()) {
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      int e = std::stoi(tok);
      if (e < 1 || e > n) throw std::invalid_argument("Subset: element out of range in \"" + s + "\"");
      std::uint32_t b = bit_of(e);
      if (bits & b) throw std::invalid_argument("Subset: repeated element in \"" + s + "\"");
      bits |= b;
    }
  }
  return Subset(bits, n);
}

}  // namespace vdm
