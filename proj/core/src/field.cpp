#include "ptspec/field.hpp"

#include <cctype>
#include <string>

namespace ptspec {

RadicandConflict::RadicandConflict(const mpz_class& a, const mpz_class& b)
    : Error("arithmetic mixes Q(sqrt " + a.get_str() + ") and Q(sqrt " + b.get_str() + ")") {}

std::pair<mpz_class, mpz_class> squarefree_decompose(const mpz_class& n) {
  if (sgn(n) <= 0) throw InvalidArgument("squarefree_decompose needs a positive integer");
  mpz_class rest = n;
  mpz_class root = 1;
  mpz_class core = 1;
  auto strip = [&](unsigned long p) {
    unsigned count = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++count;
    }
    for (unsigned i = 0; i < count / 2; ++i) root *= p;
    if (count % 2) core *= p;
  };
  strip(2);
  constexpr unsigned long kTrialLimit = 1ul << 20;
  for (unsigned long p = 3; p < kTrialLimit; p += 2) {
    if (rest == 1) break;
    if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) {
      core *= rest;  // rest is prime
      rest = 1;
      break;
    }
    strip(p);
  }
  if (rest != 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      mpz_class s;
      mpz_sqrt(s.get_mpz_t(), rest.get_mpz_t());
      root *= s;
    } else {
      core *= rest;
    }
  }
  return {root, core};
}

FieldElement::FieldElement(const mpq_class& a, const mpq_class& b, const mpz_class& n) : rat_(a), surd_(b) {
  rat_.canonicalize();
  surd_.canonicalize();
  if (sgn(surd_) == 0 || sgn(n) == 0) {
    surd_ = 0;
    return;
  }
  auto [root, core] = squarefree_decompose(n);
  if (core == 1) {
    rat_ += surd_ * root;
    surd_ = 0;
    return;
  }
  surd_ *= root;
  radicand_ = core;
}

void FieldElement::normalize() {
  if (sgn(surd_) == 0) radicand_ = 0;
}

const mpz_class& FieldElement::merged_radicand(const FieldElement& rhs) const {
  if (sgn(radicand_) == 0) return rhs.radicand_;
  if (sgn(rhs.radicand_) == 0) return radicand_;
  if (radicand_ != rhs.radicand_) throw RadicandConflict(radicand_, rhs.radicand_);
  return radicand_;
}

int FieldElement::sign() const {
  int sa = sgn(rat_);
  int sb = sgn(surd_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 D.
  mpq_class a2 = rat_ * rat_;
  mpq_class b2d = surd_ * surd_ * mpq_class(radicand_);
  int c = cmp(a2, b2d);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

FieldElement FieldElement::conjugate() const {
  FieldElement out(*this);
  out.surd_ = -out.surd_;
  return out;
}

mpq_class FieldElement::norm() const { return rat_ * rat_ - surd_ * surd_ * mpq_class(radicand_); }

double FieldElement::to_double() const { return to_bigfloat(128).to_double(); }

BigFloat FieldElement::to_bigfloat(mpfr_prec_t precision) const {
  BigFloat out(rat_, precision);
  if (sgn(surd_) != 0) out += BigFloat(surd_, precision) * sqrt(BigFloat(radicand_, precision));
  return out;
}

std::string FieldElement::to_string() const {
  std::string out = rat_.get_str();
  if (sgn(surd_) == 0) return out;
  mpq_class mag = abs(surd_);
  out += sgn(surd_) > 0 ? " + " : " - ";
  out += mag.get_str();
  out += "*sqrt(" + radicand_.get_str() + ")";
  return out;
}

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

mpq_class parse_rational(const std::string& s) {
  if (s.empty() || s == "+" || s == "-") throw InvalidArgument("malformed rational '" + s + "'");
  mpq_class q;
  if (q.set_str(s.front() == '+' ? s.substr(1) : s, 10) != 0) throw InvalidArgument("malformed rational '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

FieldElement FieldElement::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  auto sq = s.find("*sqrt(");
  if (sq == std::string::npos) return FieldElement(parse_rational(s));
  if (s.back() != ')') throw InvalidArgument("malformed surd '" + std::string(text) + "'");
  mpz_class radicand(s.substr(sq + 6, s.size() - sq - 7));
  // Split the rational part from the surd coefficient at the last sign before "*sqrt(".
  std::size_t split = std::string::npos;
  for (std::size_t i = sq; i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '+' && s[i - 1] != '-') {
      split = i;
      break;
    }
  }
  mpq_class a = 0;
  std::string coeff;
  if (split == std::string::npos) {
    coeff = s.substr(0, sq);
  } else {
    a = parse_rational(s.substr(0, split));
    coeff = s.substr(split, sq - split);
    if (coeff.size() > 1 && coeff[0] == '+' && coeff[1] == '-') coeff = coeff.substr(1);
    if (coeff.size() > 1 && coeff[0] == '-' && coeff[1] == '-') coeff = coeff.substr(2);
  }
  return FieldElement(a, parse_rational(coeff), radicand);
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  mpz_class d = merged_radicand(rhs);
  rat_ += rhs.rat_;
  surd_ += rhs.surd_;
  radicand_ = d;
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  mpz_class d = merged_radicand(rhs);
  rat_ -= rhs.rat_;
  surd_ -= rhs.surd_;
  radicand_ = d;
  normalize();
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  if (rhs.is_rational()) {
    rat_ *= rhs.rat_;
    surd_ *= rhs.rat_;
    normalize();
    return *this;
  }
  mpz_class d = merged_radicand(rhs);
  mpq_class a = rat_ * rhs.rat_ + surd_ * rhs.surd_ * mpq_class(d);
  mpq_class b = rat_ * rhs.surd_ + surd_ * rhs.rat_;
  rat_ = std::move(a);
  surd_ = std::move(b);
  radicand_ = d;
  normalize();
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  if (rhs.is_zero()) throw InvalidArgument("division by zero field element");
  if (rhs.is_rational()) {
    rat_ /= rhs.rat_;
    surd_ /= rhs.rat_;
    normalize();
    return *this;
  }
  mpq_class n = rhs.norm();
  FieldElement inv;
  inv.rat_ = rhs.rat_ / n;
  inv.surd_ = -rhs.surd_ / n;
  inv.radicand_ = rhs.radicand_;
  return *this *= inv;
}

FieldElement FieldElement::operator-() const {
  FieldElement out(*this);
  out.rat_ = -out.rat_;
  out.surd_ = -out.surd_;
  return out;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ptspec
