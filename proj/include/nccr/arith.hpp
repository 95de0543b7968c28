#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nccr/error.hpp"

namespace nccr {

/// Lattice coordinates. Every product goes through the checked helpers below,
/// so an overflow raises instead of producing a wrong answer.
using Int = std::int64_t;
using Rational = mpq_class;

using IVec2 = std::array<Int, 2>;
using IVec3 = std::array<Int, 3>;
using IMat3 = std::array<IVec3, 3>;  // row major
using QVec3 = std::array<Rational, 3>;

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::InvalidInput, "integer overflow");
  return r;
}

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::InvalidInput, "integer overflow");
  return r;
}

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline Int dot(const IVec3& a, const IVec3& b) {
  return checked_add(checked_add(checked_mul(a[0], b[0]), checked_mul(a[1], b[1])),
                     checked_mul(a[2], b[2]));
}

inline IVec3 cross(const IVec3& a, const IVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline IVec3 operator+(const IVec3& a, const IVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline IVec3 operator-(const IVec3& a, const IVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline IVec3 operator-(const IVec3& a) { return {-a[0], -a[1], -a[2]}; }

inline Int det3(const IMat3& m) {
  return dot(m[0], cross(m[1], m[2]));
}

/// adj(m) with m * adj(m) = det(m) * I.
inline IMat3 adjugate(const IMat3& m) {
  // Columns of the adjugate are the cross products of pairs of rows.
  const IVec3 c0 = cross(m[1], m[2]);
  const IVec3 c1 = cross(m[2], m[0]);
  const IVec3 c2 = cross(m[0], m[1]);
  return {IVec3{c0[0], c1[0], c2[0]}, IVec3{c0[1], c1[1], c2[1]}, IVec3{c0[2], c1[2], c2[2]}};
}

inline IVec3 mat_vec(const IMat3& m, const IVec3& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }

inline IMat3 mat_mul(const IMat3& a, const IMat3& b) {
  IMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = dot(a[i], IVec3{b[0][j], b[1][j], b[2][j]});
  return r;
}

inline Int gcd3(const IVec3& v) { return std::gcd(std::gcd(v[0], v[1]), v[2]); }

// ---- rationals ----------------------------------------------------------

inline Rational floor(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

inline Rational frac(const Rational& q) { return q - floor(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Int to_int(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p())
    throw Error(ErrorCode::InvalidInput, "rational is not a machine integer");
  return q.get_num().get_si();
}

inline Rational rat(Int n, Int d = 1) {
  Rational q(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
  q.canonicalize();
  return q;
}

inline QVec3 to_q(const IVec3& v) { return {rat(v[0]), rat(v[1]), rat(v[2])}; }

inline QVec3 operator+(const QVec3& a, const QVec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline QVec3 operator-(const QVec3& a, const QVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline QVec3 operator-(const QVec3& a) { return {-a[0], -a[1], -a[2]}; }

inline Rational qdot(const QVec3& a, const QVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Rational qdot(const IVec3& a, const QVec3& b) { return rat(a[0]) * b[0] + rat(a[1]) * b[1] + rat(a[2]) * b[2]; }

inline QVec3 qmat_vec(const IMat3& m, const QVec3& v) {
  return {qdot(m[0], v), qdot(m[1], v), qdot(m[2], v)};
}

inline QVec3 frac(const QVec3& v) { return {frac(v[0]), frac(v[1]), frac(v[2])}; }

inline bool is_integral(const QVec3& v) { return is_integer(v[0]) && is_integer(v[1]) && is_integer(v[2]); }

inline IVec3 to_ivec(const QVec3& v) { return {to_int(v[0]), to_int(v[1]), to_int(v[2])}; }

/// "p/q", or "p" when integral.
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Rational 3x3 solve by Cramer's rule; returns nullopt-like flag through det.
struct QMat3 {
  std::array<QVec3, 3> rows;
};

inline Rational qdet(const QMat3& m) {
  const auto& a = m.rows;
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

/// Inverse of a rational matrix; caller guarantees det != 0.
inline QMat3 qinverse(const QMat3& m) {
  const auto& a = m.rows;
  const Rational d = qdet(m);
  QMat3 r;
  r.rows[0] = {(a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d, (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d,
               (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d};
  r.rows[1] = {(a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d, (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d,
               (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d};
  r.rows[2] = {(a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d, (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d,
               (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d};
  return r;
}

inline QMat3 qmul(const QMat3& a, const QMat3& b) {
  QMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.rows[i][j] = a.rows[i][0] * b.rows[0][j] + a.rows[i][1] * b.rows[1][j] + a.rows[i][2] * b.rows[2][j];
  return r;
}

inline QVec3 qapply(const QMat3& m, const QVec3& v) {
  return {qdot(m.rows[0], v), qdot(m.rows[1], v), qdot(m.rows[2], v)};
}

/// Matrix whose columns are the given vectors.
inline QMat3 columns(const QVec3& a, const QVec3& b, const QVec3& c) {
  QMat3 m;
  for (int i = 0; i < 3; ++i) m.rows[i] = {a[i], b[i], c[i]};
  return m;
}

inline std::ostream& operator<<(std::ostream& os, const IVec3& v) {
  return os << '(' << v[0] << ',' << v[1] << ',' << v[2] << ')';
}

}  // namespace nccr
