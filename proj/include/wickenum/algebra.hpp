// Exact arithmetic substrate: arbitrary-precision rationals, multivariate
// Laurent polynomials over a fixed variable universe, and degree-truncated
// formal series with exp/log.
#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wickenum {

using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// "p/q" with the "/q" omitted for integers (canonical form, q > 0).
inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline Rational rat_parse(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

struct NonzeroConstantTerm : std::domain_error {
    NonzeroConstantTerm() : std::domain_error("series_exp: nonzero constant term") {}
};
struct BadConstantTerm : std::domain_error {
    BadConstantTerm() : std::domain_error("series_log: constant term is not 1") {}
};
struct UnknownVariable : std::domain_error {
    explicit UnknownVariable(const std::string& what) : std::domain_error(what) {}
};
struct ScaleExceeded : std::runtime_error {
    explicit ScaleExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Truncation buckets. Dim is the matrix-size symbol N; Z covers z and every
// z_k so a single cap bounds total trace-variable order.
enum class VarClass : uint8_t { Dim = 0, X = 1, Y = 2, Z = 3, Entry = 4 };
inline constexpr int kNumVarClasses = 5;

// A variable is either one of the fixed scalars (N, x, y, z, z1..z12) or a
// matrix-entry symbol M_i_j with 1 <= i,j <= 15. Encoded in one uint32 whose
// numeric order is the canonical variable order: N < x < y < z < z_k < M_i_j
// (entries i-major). Only N and y may carry negative exponents.
class Var {
public:
    static constexpr int kMaxTraceVar = 12;
    static constexpr int kMaxIndex = 15;

    static Var dim() { return Var(0); }
    static Var x() { return Var(1); }
    static Var y() { return Var(2); }
    static Var z() { return Var(3); }
    static Var z_k(int k) {
        if (k < 1 || k > kMaxTraceVar) throw UnknownVariable("z_k index out of range");
        return Var(3 + static_cast<uint32_t>(k));
    }
    static Var entry(int i, int j) {
        if (i < 1 || i > kMaxIndex || j < 1 || j > kMaxIndex)
            throw UnknownVariable("entry index out of range");
        return Var(kEntryBase | (static_cast<uint32_t>(i) << 4) | static_cast<uint32_t>(j));
    }

    bool is_entry() const { return code_ >= kEntryBase; }
    int entry_row() const { return static_cast<int>((code_ >> 4) & 0xf); }
    int entry_col() const { return static_cast<int>(code_ & 0xf); }

    VarClass cls() const {
        if (is_entry()) return VarClass::Entry;
        switch (code_) {
            case 0: return VarClass::Dim;
            case 1: return VarClass::X;
            case 2: return VarClass::Y;
            default: return VarClass::Z;
        }
    }
    // y^-1 and N^-1 both occur in specializations; nothing else may go negative.
    bool laurent_ok() const { return code_ == 0 || code_ == 2; }

    std::string name() const {
        if (is_entry())
            return "M_" + std::to_string(entry_row()) + "_" + std::to_string(entry_col());
        switch (code_) {
            case 0: return "N";
            case 1: return "x";
            case 2: return "y";
            case 3: return "z";
            default: return "z" + std::to_string(code_ - 3);
        }
    }

    uint32_t code() const { return code_; }
    auto operator<=>(const Var&) const = default;

private:
    static constexpr uint32_t kEntryBase = 0x100;
    explicit Var(uint32_t code) : code_(code) {}
    uint32_t code_;
};

// Exponent vector, stored sparsely; factors sorted by variable, no zeros.
class Monomial {
public:
    using Factors = std::vector<std::pair<Var, int>>;

    Monomial() = default;

    static Monomial variable(Var v, int exp = 1) {
        Monomial m;
        if (exp != 0) {
            check_exponent(v, exp);
            m.factors_.emplace_back(v, exp);
        }
        return m;
    }

    static Monomial from_factors(Factors f) {
        Monomial m;
        m.factors_ = std::move(f);
        for (auto& [v, e] : m.factors_) check_exponent(v, e);
        return m;
    }

    const Factors& factors() const { return factors_; }
    bool unit() const { return factors_.empty(); }

    int exponent(Var v) const {
        for (const auto& [w, e] : factors_)
            if (w == v) return e;
        return 0;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [v, e] : factors_) d += e;
        return d;
    }

    int class_degree(VarClass c) const {
        int d = 0;
        for (const auto& [v, e] : factors_)
            if (v.cls() == c) d += e;
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.factors_.reserve(factors_.size() + o.factors_.size());
        auto a = factors_.begin(), b = o.factors_.begin();
        while (a != factors_.end() || b != o.factors_.end()) {
            if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
                r.factors_.push_back(*a++);
            } else if (a == factors_.end() || b->first < a->first) {
                r.factors_.push_back(*b++);
            } else {
                int e = a->second + b->second;
                if (e != 0) {
                    check_exponent(a->first, e);
                    r.factors_.emplace_back(a->first, e);
                }
                ++a;
                ++b;
            }
        }
        return r;
    }

    Monomial pow(int k) const {  // k >= 0
        Monomial r;
        if (k == 0) return r;
        r.factors_ = factors_;
        for (auto& [v, e] : r.factors_) {
            e *= k;
            check_exponent(v, e);
        }
        return r;
    }

    Monomial inverse() const {
        Monomial r;
        r.factors_ = factors_;
        for (auto& [v, e] : r.factors_) {
            e = -e;
            check_exponent(v, e);
        }
        return r;
    }

    // Keep only factors of the given class (used to split scalar/entry parts).
    Monomial restricted_to(VarClass c) const {
        Monomial r;
        for (const auto& f : factors_)
            if (f.first.cls() == c) r.factors_.push_back(f);
        return r;
    }
    Monomial without_class(VarClass c) const {
        Monomial r;
        for (const auto& f : factors_)
            if (f.first.cls() != c) r.factors_.push_back(f);
        return r;
    }

    // Graded lexicographic: total degree first, then the first variable (in
    // canonical order) with differing exponent, higher exponent first.
    std::strong_ordering order(const Monomial& o) const {
        if (int d = total_degree(), e = o.total_degree(); d != e)
            return d <=> e;
        auto a = factors_.begin(), b = o.factors_.begin();
        while (a != factors_.end() && b != o.factors_.end()) {
            if (a->first != b->first) {
                // the side owning the smaller variable has a nonzero exponent there
                bool mine = a->first < b->first;
                int ea = mine ? a->second : 0;
                int eb = mine ? 0 : b->second;
                return eb <=> ea;
            }
            if (a->second != b->second) return b->second <=> a->second;
            ++a;
            ++b;
        }
        if (a != factors_.end()) return std::strong_ordering::less;
        if (b != o.factors_.end()) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

    std::string str() const {
        if (unit()) return "1";
        std::string s;
        for (const auto& [v, e] : factors_) {
            if (!s.empty()) s += "*";
            s += v.name();
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    static void check_exponent(Var v, int e) {
        if (e < 0 && !v.laurent_ok())
            throw UnknownVariable("negative exponent on non-Laurent variable " + v.name());
    }
    Factors factors_;
};

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return a.order(b) == std::strong_ordering::less;
    }
};

struct TruncationCaps {
    std::array<int, kNumVarClasses> cap{-1, -1, -1, -1, -1};  // -1 = uncapped

    static TruncationCaps none() { return {}; }
    TruncationCaps with(VarClass c, int bound) const {
        TruncationCaps r = *this;
        r.cap[static_cast<int>(c)] = bound;
        return r;
    }
    int of(VarClass c) const { return cap[static_cast<int>(c)]; }
    bool any() const {
        for (int c : cap)
            if (c >= 0) return true;
        return false;
    }
    bool admits(const Monomial& m) const {
        for (int c = 0; c < kNumVarClasses; ++c)
            if (cap[c] >= 0 && m.class_degree(static_cast<VarClass>(c)) > cap[c]) return false;
        return true;
    }
    bool operator==(const TruncationCaps&) const = default;
};

// Multivariate Laurent polynomial with exact rational coefficients.
// Terms are kept in canonical (graded lex) order; no zero coefficients stored.
class ExactPoly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialLess>;

    ExactPoly() = default;
    ExactPoly(long c) { add_term(Monomial(), rational(c)); }          // NOLINT(implicit)
    ExactPoly(const Rational& c) { add_term(Monomial(), c); }         // NOLINT(implicit)
    static ExactPoly variable(Var v, int exp = 1) {
        ExactPoly p;
        p.add_term(Monomial::variable(v, exp), rational(1));
        return p;
    }

    bool zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Monomial()); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ExactPoly& operator+=(const ExactPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ExactPoly& operator-=(const ExactPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
    friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
    ExactPoly operator-() const {
        ExactPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
        return mul(a, b, TruncationCaps::none());
    }
    ExactPoly& operator*=(const ExactPoly& o) { return *this = *this * o; }

    static ExactPoly mul(const ExactPoly& a, const ExactPoly& b, const TruncationCaps& caps) {
        ExactPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma * mb;
                if (!caps.admits(m)) continue;
                r.add_term(m, ca * cb);
            }
        return r;
    }

    // *this * m * c, added into an accumulator-friendly fresh value.
    ExactPoly shifted(const Monomial& m, const Rational& c) const {
        ExactPoly r;
        for (const auto& [mm, cc] : terms_) r.add_term(mm * m, cc * c);
        return r;
    }

    ExactPoly truncated(const TruncationCaps& caps) const {
        if (!caps.any()) return *this;
        ExactPoly r;
        for (const auto& [m, c] : terms_)
            if (caps.admits(m)) r.add_term(m, c);
        return r;
    }

    int max_class_degree(VarClass cls) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.class_degree(cls));
        return d;
    }

    // Exact substitution var -> repl. Negative powers require repl to be a
    // single invertible term.
    ExactPoly substitute(Var var, const ExactPoly& repl) const {
        ExactPoly r;
        std::map<int, ExactPoly> powers;  // exponent -> repl^exponent
        powers[0] = ExactPoly(1);
        auto power_of = [&](auto&& self, int e) -> const ExactPoly& {
            auto it = powers.find(e);
            if (it != powers.end()) return it->second;
            ExactPoly p;
            if (e > 0) {
                p = self(self, e - 1) * repl;
            } else {
                if (repl.term_count() != 1)
                    throw UnknownVariable("negative power of a non-monomial replacement");
                const auto& [rm, rc] = *repl.terms_.begin();
                p = self(self, e + 1).shifted(rm.inverse(), 1 / rc);
            }
            return powers.emplace(e, std::move(p)).first->second;
        };
        for (const auto& [m, c] : terms_) {
            int e = m.exponent(var);
            if (e == 0) {
                r.add_term(m, c);
                continue;
            }
            Monomial rest;
            Monomial::Factors f;
            for (const auto& fac : m.factors())
                if (fac.first != var) f.push_back(fac);
            rest = Monomial::from_factors(std::move(f));
            r += power_of(power_of, e).shifted(rest, c);
        }
        return r;
    }

    // Specialize to a rational value (used for numeric N).
    ExactPoly evaluated(Var var, const Rational& value) const {
        ExactPoly r;
        for (const auto& [m, c] : terms_) {
            int e = m.exponent(var);
            Rational scale = c;
            if (e != 0) {
                if (value == 0) {
                    if (e > 0) continue;
                    throw std::domain_error("evaluation at 0 with negative exponent");
                }
                Rational p(1);
                Rational base = e > 0 ? value : Rational(1 / value);
                for (int k = 0; k < std::abs(e); ++k) p *= base;
                scale *= p;
            }
            Monomial::Factors f;
            for (const auto& fac : m.factors())
                if (fac.first != var) f.push_back(fac);
            r.add_term(Monomial::from_factors(std::move(f)), scale);
        }
        return r;
    }

    bool operator==(const ExactPoly& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            if (m.unit()) {
                s += rat_str(c);
            } else if (c == 1) {
                s += m.str();
            } else if (c == -1) {
                s += "-" + m.str();
            } else {
                s += rat_str(c) + "*" + m.str();
            }
        }
        return s;
    }

private:
    TermMap terms_;
};

inline ExactPoly operator*(const Rational& c, const ExactPoly& p) {
    return p.shifted(Monomial(), c);
}

// N(N-1)...(N-v+1) as a polynomial in the dimension symbol.
inline ExactPoly falling_factorial(int v) {
    ExactPoly r(1);
    for (int t = 0; t < v; ++t) r *= ExactPoly::variable(Var::dim()) - ExactPoly(t);
    return r;
}

// binom(N, v) = falling_factorial(v)/v!
inline ExactPoly binomial_poly(int v) {
    Rational f(1);
    for (int t = 2; t <= v; ++t) f *= t;
    return (1 / f) * falling_factorial(v);
}

// Formal power series: a polynomial payload plus the truncation bounds it was
// computed under. Operations re-truncate eagerly.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(ExactPoly p, TruncationCaps caps)
        : poly_(p.truncated(caps)), caps_(caps) {}

    const ExactPoly& poly() const { return poly_; }
    const TruncationCaps& caps() const { return caps_; }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        return {a.poly_ + b.poly_, merge_caps(a.caps_, b.caps_)};
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return {a.poly_ - b.poly_, merge_caps(a.caps_, b.caps_)};
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncationCaps caps = merge_caps(a.caps_, b.caps_);
        return {ExactPoly::mul(a.poly_, b.poly_, caps), caps};
    }

    bool operator==(const TruncatedSeries& o) const { return poly_ == o.poly_; }

private:
    static TruncationCaps merge_caps(const TruncationCaps& a, const TruncationCaps& b) {
        TruncationCaps r;
        for (int c = 0; c < kNumVarClasses; ++c) {
            int x = a.cap[c], y = b.cap[c];
            r.cap[c] = (x < 0) ? y : (y < 0 ? x : std::min(x, y));
        }
        return r;
    }
    ExactPoly poly_;
    TruncationCaps caps_;
};

namespace detail {
// exp/log termination: every monomial must have positive degree in some capped
// class, so that k-fold products eventually exceed a cap.
inline void require_series_argument(const ExactPoly& p, const TruncationCaps& caps) {
    for (const auto& [m, c] : p.terms()) {
        bool ok = false;
        for (int cl = 0; cl < kNumVarClasses && !ok; ++cl)
            ok = caps.of(static_cast<VarClass>(cl)) >= 0 &&
                 m.class_degree(static_cast<VarClass>(cl)) > 0;
        if (!ok)
            throw std::domain_error("series argument has a term free of every capped class: " +
                                    m.str());
    }
}
}  // namespace detail

inline TruncatedSeries series_exp(const TruncatedSeries& f) {
    if (f.poly().constant_term() != 0) throw NonzeroConstantTerm();
    detail::require_series_argument(f.poly(), f.caps());
    ExactPoly result(1);
    ExactPoly term(1);
    for (long k = 1;; ++k) {
        term = ExactPoly::mul(term, f.poly(), f.caps());
        term = (Rational(1, k)) * term;
        if (term.zero()) break;
        result += term;
    }
    return {result, f.caps()};
}

inline TruncatedSeries series_log(const TruncatedSeries& f) {
    if (f.poly().constant_term() != 1) throw BadConstantTerm();
    ExactPoly u = f.poly() - ExactPoly(1);
    detail::require_series_argument(u, f.caps());
    ExactPoly result;
    ExactPoly pow(1);
    for (long k = 1;; ++k) {
        pow = ExactPoly::mul(pow, u, f.caps());
        if (pow.zero()) break;
        Rational c(k % 2 == 1 ? 1 : -1, k);
        result += c * pow;
    }
    return {result, f.caps()};
}

}  // namespace wickenum
