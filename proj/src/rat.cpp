#include "tqc/rat.hpp"

#include <ostream>
#include <stdexcept>

namespace tqc {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    auto digits_ok = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view n = text.substr(0, slash);
    std::string_view d = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(n) || !digits_ok(d) || d.front() == '-' || d.front() == '+')
        throw std::invalid_argument("Rat: malformed rational '" + std::string(text) + "'");
    std::string ns(n);
    if (ns.front() == '+') ns.erase(0, 1);
    mpz_class num(ns, 10);
    mpz_class den(std::string(d), 10);
    if (den == 0) throw std::invalid_argument("Rat: zero denominator in '" + std::string(text) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(std::move(q));
}

std::string Rat::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rat::pretty() const {
    if (is_integer()) return v_.get_num().get_str();
    return str();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

void Rat::add_product(const Rat& a, const Rat& b) {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
    mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), tmp.get_mpq_t());
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.pretty(); }

Rat factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return Rat(f);
}

Rat binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return Rat(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(b);
}

Rat pow(const Rat& base, int exponent) {
    if (exponent < 0) return pow(Rat(1) / base, -exponent);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rat(mpq_class(n, d));
}

}  // namespace tqc
