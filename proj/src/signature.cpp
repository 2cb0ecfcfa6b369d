#include "fiber/signature.hpp"

namespace fiber {

namespace {

void check_count(std::size_t n) {
  if (n < 1 || n > static_cast<std::size_t>(Signature::kMaxGenerators)) {
    throw AlgebraError("signature needs 1.." + std::to_string(Signature::kMaxGenerators) +
                       " generators, got " + std::to_string(n));
  }
}

}  // namespace

Signature::Signature(std::initializer_list<int> squares)
    : Signature(std::span<const int>(squares.begin(), squares.size())) {}

Signature::Signature(std::span<const int> squares) {
  check_count(squares.size());
  n_ = static_cast<int>(squares.size());
  for (std::size_t i = 0; i < squares.size(); ++i) {
    if (squares[i] == -1) {
      negative_ |= BasisIndex{1} << i;
    } else if (squares[i] != 1) {
      throw AlgebraError("generator square must be +1 or -1, got " + std::to_string(squares[i]));
    }
  }
}

Signature Signature::parse(std::string_view text) {
  static constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";
  std::vector<int> squares;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '+') {
      squares.push_back(1);
      ++i;
    } else if (text[i] == '-') {
      squares.push_back(-1);
      ++i;
    } else if (text.substr(i, kUnicodeMinus.size()) == kUnicodeMinus) {
      squares.push_back(-1);
      i += kUnicodeMinus.size();
    } else {
      throw AlgebraError("invalid signature character '" + std::string(1, text[i]) + "' in \"" +
                         std::string(text) + "\" (expected '+' or '-')");
    }
  }
  check_count(squares.size());
  return Signature(squares);
}

int Signature::square(int generator) const {
  if (generator < 0 || generator >= n_) throw AlgebraError("generator index out of range");
  return (negative_ >> generator) & 1 ? -1 : 1;
}

std::string Signature::str() const {
  std::string out;
  for (int i = 0; i < n_; ++i) out += square(i) > 0 ? '+' : '-';
  return out;
}

std::string Signature::label(BasisIndex s) const {
  if (!contains(s)) throw AlgebraError("basis index out of range for signature " + str());
  if (s == 0) return "1";
  std::string out = "e";
  for (int i = 0; i < n_; ++i) {
    if ((s >> i) & 1) out += std::to_string(i + 1);
  }
  return out;
}

std::vector<std::string> Signature::labels() const {
  std::vector<std::string> out;
  out.reserve(dimension());
  for (BasisIndex s = 0; s < dimension(); ++s) out.push_back(label(s));
  return out;
}

void require_same(const Signature& a, const Signature& b) {
  if (!(a == b)) {
    throw AlgebraError("signature mismatch: \"" + a.str() + "\" vs \"" + b.str() + "\"");
  }
}

}  // namespace fiber
