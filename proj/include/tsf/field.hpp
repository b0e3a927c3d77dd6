/**
 * @file field.hpp
 * @brief Exact fields: the rationals, prime fields F_p and extensions F_{p^s}.
 *
 * Fields are interned: `Field::rationals()`, `Field::prime(p)` and
 * `Field::extension(p, modulus)` return the same pointer for the same
 * arguments, so field equality is pointer equality. Interned fields live for
 * the whole process and are never mutated after construction.
 *
 * Elements of F_{p^s} are polynomial residues modulo a monic irreducible of
 * degree s. An element is coded as the integer sum c_i p^i of its coefficients.
 */
#ifndef TSF_FIELD_HPP
#define TSF_FIELD_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace tsf {

class Field;
class Scalar;
using FieldRef = const Field*;

class Field {
public:
    enum class Kind { rationals, prime, extension };

    static FieldRef rationals();
    static FieldRef prime(std::int64_t p);
    // modulus: coefficients low to high, monic, degree s >= 1.
    static FieldRef extension(std::int64_t p, const std::vector<std::int64_t>& modulus);

    Kind kind() const { return kind_; }
    std::int64_t characteristic() const { return p_; }
    int degree() const { return s_; }
    // q = p^s for finite fields, 0 for the rationals.
    std::int64_t order() const { return q_; }
    bool is_finite() const { return kind_ != Kind::rationals; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }
    std::string name() const;

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(std::int64_t v) const;
    Scalar from_rational(const mpq_class& v) const;
    // Finite fields only: code in [0, q).
    Scalar element(std::int64_t code) const;
    std::vector<Scalar> elements() const;

    // Image of x under the canonical embedding of its field into this one
    // (identity, or F_p -> F_{p^s}).
    Scalar embed(const Scalar& x) const;
    bool embeds_from(FieldRef other) const;

    // Raw finite-field arithmetic on codes.
    std::int64_t add_code(std::int64_t a, std::int64_t b) const;
    std::int64_t neg_code(std::int64_t a) const;
    std::int64_t mul_code(std::int64_t a, std::int64_t b) const;
    std::int64_t inv_code(std::int64_t a) const;

private:
    Field() = default;
    std::int64_t poly_mul(std::int64_t a, std::int64_t b) const;

    Kind kind_ = Kind::rationals;
    std::int64_t p_ = 0;
    int s_ = 1;
    std::int64_t q_ = 0;
    std::vector<std::int64_t> modulus_;
    // Extension fields: full tables (q is small by construction).
    std::vector<std::int32_t> mul_table_, inv_table_;
};

bool is_prime(std::int64_t n);
// Exhaustive factor search; used to validate extension moduli.
bool is_irreducible_mod_p(std::int64_t p, const std::vector<std::int64_t>& poly);

class Scalar {
public:
    Scalar() = default;
    Scalar(FieldRef f, std::int64_t code) : f_(f), v_(code) {}
    Scalar(FieldRef f, mpq_class q) : f_(f), v_(std::move(q)) {}

    FieldRef field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;
    std::int64_t code() const { return std::get<std::int64_t>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }

    Scalar inverse() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Q: "a" or "a/b"; F_p: "0".."p-1"; F_{p^s}: "[c0,c1,...]".
    std::string to_string() const;

private:
    void check_same(const Scalar& o) const;
    FieldRef f_ = nullptr;
    std::variant<std::int64_t, mpq_class> v_ = std::int64_t{0};
};

Scalar parse_scalar(FieldRef f, const std::string& text);

}  // namespace tsf

#endif
