#include "tsf/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "tsf/error.hpp"

namespace tsf {

namespace {

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

// Key: (p, modulus); the rationals use p = 0.
std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, std::unique_ptr<Field>>& registry() {
    static std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, std::unique_ptr<Field>> r;
    return r;
}

std::int64_t mod(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
    __int128 r = 1, x = mod(b, p);
    while (e > 0) {
        if (e & 1) r = r * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return static_cast<std::int64_t>(r);
}

// Remainder of a modulo monic m over F_p; coefficient vectors low to high.
std::vector<std::int64_t> poly_rem(std::vector<std::int64_t> a, const std::vector<std::int64_t>& m,
                                   std::int64_t p) {
    const int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
        std::int64_t c = mod(a[i], p);
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) a[i - dm + j] = mod(a[i - dm + j] - c * m[j], p);
    }
    a.resize(std::min<std::size_t>(a.size(), dm));
    return a;
}

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible_mod_p(std::int64_t p, const std::vector<std::int64_t>& poly) {
    const int s = static_cast<int>(poly.size()) - 1;
    if (s < 1) return false;
    if (s == 1) return true;
    // Try every monic divisor of degree 1..s/2.
    for (int k = 1; k <= s / 2; ++k) {
        std::int64_t count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (std::int64_t code = 0; code < count; ++code) {
            std::vector<std::int64_t> div(k + 1, 0);
            std::int64_t c = code;
            for (int i = 0; i < k; ++i) {
                div[i] = c % p;
                c /= p;
            }
            div[k] = 1;
            auto r = poly_rem(poly, div, p);
            bool zero = true;
            for (auto x : r)
                if (x != 0) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

FieldRef Field::rationals() {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto& slot = registry()[{0, {}}];
    if (!slot) slot.reset(new Field());
    return slot.get();
}

FieldRef Field::prime(std::int64_t p) {
    if (!is_prime(p)) throw Error("invalid-field", "characteristic " + std::to_string(p) + " is not prime");
    if (p >= (std::int64_t{1} << 31)) throw Error("invalid-field", "prime too large");
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto& slot = registry()[{p, {}}];
    if (!slot) {
        slot.reset(new Field());
        slot->kind_ = Kind::prime;
        slot->p_ = p;
        slot->q_ = p;
    }
    return slot.get();
}

FieldRef Field::extension(std::int64_t p, const std::vector<std::int64_t>& modulus_in) {
    if (!is_prime(p)) throw Error("invalid-field", "characteristic " + std::to_string(p) + " is not prime");
    std::vector<std::int64_t> m;
    for (auto c : modulus_in) m.push_back(mod(c, p));
    if (m.size() < 2 || m.back() != 1) throw Error("invalid-field", "modulus must be monic of degree >= 1");
    const int s = static_cast<int>(m.size()) - 1;
    if (s == 1) return prime(p);
    if (s > 4) throw Error("invalid-field", "extension degree above 4 is not supported");
    std::int64_t q = 1;
    for (int i = 0; i < s; ++i) q *= p;
    if (q > 4096) throw Error("invalid-field", "extension field too large");
    if (!is_irreducible_mod_p(p, m)) throw Error("invalid-field", "modulus is reducible");
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto& slot = registry()[{p, m}];
    if (!slot) {
        auto f = std::unique_ptr<Field>(new Field());
        f->kind_ = Kind::extension;
        f->p_ = p;
        f->s_ = s;
        f->q_ = q;
        f->modulus_ = m;
        f->mul_table_.assign(static_cast<std::size_t>(q * q), 0);
        f->inv_table_.assign(static_cast<std::size_t>(q), 0);
        for (std::int64_t a = 0; a < q; ++a)
            for (std::int64_t b = 0; b < q; ++b) {
                auto c = f->poly_mul(a, b);
                f->mul_table_[a * q + b] = static_cast<std::int32_t>(c);
                if (c == 1) f->inv_table_[a] = static_cast<std::int32_t>(b);
            }
        slot = std::move(f);
    }
    return slot.get();
}

std::int64_t Field::poly_mul(std::int64_t a, std::int64_t b) const {
    std::vector<std::int64_t> x(s_), y(s_), z(2 * s_ - 1, 0);
    for (int i = 0; i < s_; ++i) {
        x[i] = a % p_;
        a /= p_;
        y[i] = b % p_;
        b /= p_;
    }
    for (int i = 0; i < s_; ++i)
        for (int j = 0; j < s_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
    auto r = poly_rem(z, modulus_, p_);
    std::int64_t code = 0;
    for (int i = s_ - 1; i >= 0; --i) code = code * p_ + (i < static_cast<int>(r.size()) ? r[i] : 0);
    return code;
}

std::string Field::name() const {
    switch (kind_) {
        case Kind::rationals: return "Q";
        case Kind::prime: return "F" + std::to_string(p_);
        case Kind::extension: {
            std::ostringstream os;
            os << "F" << p_ << "^" << s_ << " modulus=[";
            for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
            os << "]";
            return os.str();
        }
    }
    return "?";
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t v) const {
    if (kind_ == Kind::rationals) return Scalar(this, mpq_class(static_cast<long>(v)));
    return Scalar(this, mod(v, p_));
}

Scalar Field::from_rational(const mpq_class& v) const {
    if (kind_ == Kind::rationals) {
        mpq_class c = v;
        c.canonicalize();
        return Scalar(this, std::move(c));
    }
    mpz_class num = v.get_num() % p_, den = v.get_den() % p_;
    if (den == 0) throw Error("characteristic-too-small", "denominator divisible by " + std::to_string(p_));
    std::int64_t n = mod(num.get_si(), p_), d = mod(den.get_si(), p_);
    return Scalar(this, static_cast<std::int64_t>((__int128)n * pow_mod(d, p_ - 2, p_) % p_));
}

Scalar Field::element(std::int64_t code) const {
    if (!is_finite() || code < 0 || code >= q_) throw Error("invalid-element", "code out of range");
    return Scalar(this, code);
}

std::vector<Scalar> Field::elements() const {
    if (!is_finite()) throw Error("infinite-field", "cannot enumerate the rationals");
    std::vector<Scalar> out;
    out.reserve(static_cast<std::size_t>(q_));
    for (std::int64_t c = 0; c < q_; ++c) out.emplace_back(this, c);
    return out;
}

bool Field::embeds_from(FieldRef other) const {
    if (other == this) return true;
    return kind_ == Kind::extension && other->kind_ == Kind::prime && other->p_ == p_;
}

Scalar Field::embed(const Scalar& x) const {
    if (x.field() == this) return x;
    if (!embeds_from(x.field()))
        throw Error("characteristic-mismatch", "no embedding " + x.field()->name() + " -> " + name());
    // Constants of F_p have the same code in F_{p^s}.
    return Scalar(this, x.code());
}

std::int64_t Field::add_code(std::int64_t a, std::int64_t b) const {
    if (kind_ == Kind::prime) {
        std::int64_t c = a + b;
        return c >= p_ ? c - p_ : c;
    }
    std::int64_t r = 0, w = 1;
    for (int i = 0; i < s_; ++i) {
        r += ((a % p_ + b % p_) % p_) * w;
        a /= p_;
        b /= p_;
        w *= p_;
    }
    return r;
}

std::int64_t Field::neg_code(std::int64_t a) const {
    if (kind_ == Kind::prime) return a == 0 ? 0 : p_ - a;
    std::int64_t r = 0, w = 1;
    for (int i = 0; i < s_; ++i) {
        r += ((p_ - a % p_) % p_) * w;
        a /= p_;
        w *= p_;
    }
    return r;
}

std::int64_t Field::mul_code(std::int64_t a, std::int64_t b) const {
    if (kind_ == Kind::prime) return static_cast<std::int64_t>((__int128)a * b % p_);
    return mul_table_[a * q_ + b];
}

std::int64_t Field::inv_code(std::int64_t a) const {
    if (a == 0) throw Error("division-by-zero", "inverse of zero");
    if (kind_ == Kind::prime) return pow_mod(a, p_ - 2, p_);
    return inv_table_[a];
}

// ---------------------------------------------------------------- Scalar

void Scalar::check_same(const Scalar& o) const {
    if (f_ != o.f_) throw Error("mixed-fields", "arithmetic across different fields");
}

bool Scalar::is_zero() const {
    if (std::holds_alternative<std::int64_t>(v_)) return std::get<std::int64_t>(v_) == 0;
    return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
    if (std::holds_alternative<std::int64_t>(v_)) return std::get<std::int64_t>(v_) == 1;
    return std::get<mpq_class>(v_) == 1;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division-by-zero", "inverse of zero");
    if (f_->kind() == Field::Kind::rationals) return Scalar(f_, mpq_class(1 / rational()));
    return Scalar(f_, f_->inv_code(code()));
}

Scalar Scalar::operator-() const {
    if (f_->kind() == Field::Kind::rationals) return Scalar(f_, mpq_class(-rational()));
    return Scalar(f_, f_->neg_code(code()));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    if (f_->kind() == Field::Kind::rationals)
        std::get<mpq_class>(v_) += o.rational();
    else
        v_ = f_->add_code(code(), o.code());
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    if (f_->kind() == Field::Kind::rationals)
        std::get<mpq_class>(v_) -= o.rational();
    else
        v_ = f_->add_code(code(), f_->neg_code(o.code()));
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(o);
    if (f_->kind() == Field::Kind::rationals)
        std::get<mpq_class>(v_) *= o.rational();
    else
        v_ = f_->mul_code(code(), o.code());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    check_same(o);
    return *this *= o.inverse();
}

bool Scalar::operator==(const Scalar& o) const { return f_ == o.f_ && v_ == o.v_; }

std::string Scalar::to_string() const {
    switch (f_->kind()) {
        case Field::Kind::rationals: return rational().get_str();
        case Field::Kind::prime: return std::to_string(code());
        case Field::Kind::extension: {
            std::ostringstream os;
            std::int64_t c = code();
            os << "[";
            for (int i = 0; i < f_->degree(); ++i) {
                os << (i ? "," : "") << c % f_->characteristic();
                c /= f_->characteristic();
            }
            os << "]";
            return os.str();
        }
    }
    return "?";
}

Scalar parse_scalar(FieldRef f, const std::string& text) {
    try {
        if (f->kind() == Field::Kind::extension) {
            if (text.size() < 2 || text.front() != '[' || text.back() != ']')
                throw Error("malformed-scalar", text);
            std::vector<std::int64_t> cs;
            std::stringstream ss(text.substr(1, text.size() - 2));
            std::string tok;
            while (std::getline(ss, tok, ',')) cs.push_back(std::stoll(tok));
            if (static_cast<int>(cs.size()) != f->degree()) throw Error("malformed-scalar", text);
            std::int64_t code = 0;
            for (int i = f->degree() - 1; i >= 0; --i) code = code * f->characteristic() + mod(cs[i], f->characteristic());
            return f->element(code);
        }
        mpq_class q(text);
        q.canonicalize();
        return f->from_rational(q);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error("malformed-scalar", text);
    }
}

}  // namespace tsf
