#ifndef IVMC_EXPR_HPP
#define IVMC_EXPR_HPP

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <utility>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ivmc/box.hpp"
#include "ivmc/errors.hpp"
#include "ivmc/interval.hpp"

namespace ivmc {

enum class binary_op : std::uint8_t { add, sub, mul, div };

/// One node of an expression DAG. Leaves are constants or variables;
/// interior nodes reference strictly earlier nodes.
struct expr_node {
    enum class node_kind : std::uint8_t { constant, variable, binary, power, call };

    node_kind kind;
    binary_op op{};             // binary
    std_fn fn{};                // call
    std::uint32_t lhs = 0;      // binary left / power base / call child
    std::uint32_t rhs = 0;      // binary right
    long long exponent = 0;     // power
    std::uint32_t var = 0;      // variable index, 0-based
    double value = 0.0;         // constant, as a point
    double enc_lo = 0.0;        // constant, as an enclosure of the written literal
    double enc_hi = 0.0;
};

/// Parsed elementary function as a DAG in topological order, supporting
/// point evaluation (floating arithmetic) and box evaluation (the natural
/// interval extension). Immutable after construction; evaluation is pure
/// and reentrant.
class expr_dag {
  public:
    class builder;

    static expr_dag parse(std::string_view src, std::size_t n_vars);

    std::size_t arity() const { return arity_; }
    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<expr_node>& nodes() const { return nodes_; }
    std::uint32_t root() const { return root_; }

    double eval_point(std::span<const double> x) const {
        if (x.size() != arity_)
            throw error("point has " + std::to_string(x.size()) + " coordinates, expected " +
                        std::to_string(arity_));
        std::vector<double> v(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const expr_node& n = nodes_[i];
            switch (n.kind) {
                case expr_node::node_kind::constant:
                    v[i] = n.value;
                    break;
                case expr_node::node_kind::variable:
                    v[i] = x[n.var];
                    break;
                case expr_node::node_kind::binary: {
                    const double a = v[n.lhs];
                    const double b = v[n.rhs];
                    switch (n.op) {
                        case binary_op::add: v[i] = a + b; break;
                        case binary_op::sub: v[i] = a - b; break;
                        case binary_op::mul: v[i] = a * b; break;
                        case binary_op::div:
                            if (b == 0.0) throw eval_domain_error("division by zero");
                            v[i] = a / b;
                            break;
                    }
                    break;
                }
                case expr_node::node_kind::power: {
                    const double a = v[n.lhs];
                    if (n.exponent == 0) {
                        v[i] = 1.0;
                    } else if (n.exponent < 0 && a == 0.0) {
                        throw eval_domain_error("zero raised to a negative power");
                    } else {
                        v[i] = std::pow(a, static_cast<double>(n.exponent));
                    }
                    break;
                }
                case expr_node::node_kind::call:
                    v[i] = eval_fn(n.fn, v[n.lhs]);
                    break;
            }
            if (std::isnan(v[i]))
                throw eval_domain_error("point evaluation produced NaN");
        }
        return v[root_];
    }

    interval eval_box(const box& X) const {
        if (X.size() != arity_)
            throw error("box has " + std::to_string(X.size()) + " dimensions, expected " +
                        std::to_string(arity_));
        std::vector<interval> v(nodes_.size());
        try {
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                const expr_node& n = nodes_[i];
                switch (n.kind) {
                    case expr_node::node_kind::constant:
                        v[i] = interval(n.enc_lo, n.enc_hi);
                        break;
                    case expr_node::node_kind::variable:
                        v[i] = X[n.var];
                        break;
                    case expr_node::node_kind::binary:
                        switch (n.op) {
                            case binary_op::add: v[i] = add(v[n.lhs], v[n.rhs]); break;
                            case binary_op::sub: v[i] = sub(v[n.lhs], v[n.rhs]); break;
                            case binary_op::mul: v[i] = mul(v[n.lhs], v[n.rhs]); break;
                            case binary_op::div: v[i] = div(v[n.lhs], v[n.rhs]); break;
                        }
                        break;
                    case expr_node::node_kind::power:
                        v[i] = pow_int(v[n.lhs], n.exponent);
                        break;
                    case expr_node::node_kind::call:
                        v[i] = apply(n.fn, v[n.lhs]);
                        break;
                }
            }
        } catch (const division_by_zero_interval& e) {
            throw extension_undefined(std::string("natural extension undefined: ") + e.what());
        } catch (const interval_domain_error& e) {
            throw extension_undefined(std::string("natural extension undefined: ") + e.what());
        }
        return v[root_];
    }

  private:
    static double eval_fn(std_fn f, double a) {
        switch (f) {
            case std_fn::exp: return std::exp(a);
            case std_fn::log:
                if (a <= 0.0) throw eval_domain_error("log of a nonpositive value");
                return std::log(a);
            case std_fn::sqrt:
                if (a < 0.0) throw eval_domain_error("sqrt of a negative value");
                return std::sqrt(a);
            case std_fn::abs: return std::fabs(a);
            case std_fn::sin: return std::sin(a);
            case std_fn::cos: return std::cos(a);
            case std_fn::tan: return std::tan(a);
            case std_fn::sinh: return std::sinh(a);
            case std_fn::cosh: return std::cosh(a);
            case std_fn::tanh: return std::tanh(a);
            case std_fn::asin:
                if (a < -1.0 || a > 1.0) throw eval_domain_error("asin outside [-1, 1]");
                return std::asin(a);
            case std_fn::acos:
                if (a < -1.0 || a > 1.0) throw eval_domain_error("acos outside [-1, 1]");
                return std::acos(a);
            case std_fn::atan: return std::atan(a);
        }
        throw error("unreachable standard function id");
    }

    std::vector<expr_node> nodes_;
    std::size_t arity_ = 0;
    std::uint32_t root_ = 0;
};

/// Incremental DAG construction with common-subexpression sharing:
/// syntactically identical subtrees map to a single node. Sharing does not
/// change the natural extension's value, it only shrinks the DAG.
class expr_dag::builder {
  public:
    explicit builder(std::size_t n_vars) : arity_(n_vars) {}

    std::uint32_t constant(double v) { return constant(v, v, v); }

    std::uint32_t constant(double v, double enc_lo, double enc_hi) {
        expr_node n;
        n.kind = expr_node::node_kind::constant;
        n.value = v;
        n.enc_lo = enc_lo;
        n.enc_hi = enc_hi;
        return intern(n);
    }

    std::uint32_t variable(std::size_t index) {
        if (index >= arity_)
            throw invalid_spec("variable index " + std::to_string(index + 1) +
                               " exceeds arity " + std::to_string(arity_));
        expr_node n;
        n.kind = expr_node::node_kind::variable;
        n.var = static_cast<std::uint32_t>(index);
        return intern(n);
    }

    std::uint32_t binary(binary_op op, std::uint32_t a, std::uint32_t b) {
        expr_node n;
        n.kind = expr_node::node_kind::binary;
        n.op = op;
        n.lhs = a;
        n.rhs = b;
        return intern(n);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) { return binary(binary_op::add, a, b); }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) { return binary(binary_op::sub, a, b); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) { return binary(binary_op::mul, a, b); }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) { return binary(binary_op::div, a, b); }

    std::uint32_t neg(std::uint32_t a) { return sub(constant(0.0), a); }

    std::uint32_t pow(std::uint32_t base, long long exponent) {
        expr_node n;
        n.kind = expr_node::node_kind::power;
        n.lhs = base;
        n.exponent = exponent;
        return intern(n);
    }

    std::uint32_t call(std_fn f, std::uint32_t a) {
        expr_node n;
        n.kind = expr_node::node_kind::call;
        n.fn = f;
        n.lhs = a;
        return intern(n);
    }

    expr_dag take(std::uint32_t root) {
        expr_dag d;
        d.nodes_ = std::move(nodes_);
        d.arity_ = arity_;
        d.root_ = root;
        return d;
    }

  private:
    struct key {
        std::uint64_t a, b, c;
        bool operator==(const key&) const = default;
    };
    struct key_hash {
        std::size_t operator()(const key& k) const {
            std::uint64_t h = 0x9e3779b97f4a7c15ULL;
            for (std::uint64_t w : {k.a, k.b, k.c}) {
                h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            }
            return static_cast<std::size_t>(h);
        }
    };

    static std::uint64_t bits(double v) {
        std::uint64_t u;
        static_assert(sizeof(u) == sizeof(v));
        __builtin_memcpy(&u, &v, sizeof(u));
        return u;
    }

    static key key_of(const expr_node& n) {
        switch (n.kind) {
            case expr_node::node_kind::constant:
                return {0, bits(n.value), bits(n.enc_lo) ^ (bits(n.enc_hi) << 1)};
            case expr_node::node_kind::variable:
                return {1, n.var, 0};
            case expr_node::node_kind::binary:
                return {2 | (static_cast<std::uint64_t>(n.op) << 8),
                        (static_cast<std::uint64_t>(n.lhs) << 32) | n.rhs, 0};
            case expr_node::node_kind::power:
                return {3, n.lhs, static_cast<std::uint64_t>(n.exponent)};
            case expr_node::node_kind::call:
                return {4 | (static_cast<std::uint64_t>(n.fn) << 8), n.lhs, 0};
        }
        return {~0ULL, 0, 0};
    }

    std::uint32_t intern(const expr_node& n) {
        const key k = key_of(n);
        if (const auto it = interned_.find(k); it != interned_.end()) return it->second;
        const auto id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(n);
        interned_.emplace(k, id);
        return id;
    }

    std::vector<expr_node> nodes_;
    std::unordered_map<key, std::uint32_t, key_hash> interned_;
    std::size_t arity_;
};

namespace detail {

// Recursive-descent parser for the formula grammar:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' ['-'] integer-literal)*
//   atom  := number | 'x'<digits> | function '(' expr ')' | '(' expr ')'
// '^' binds tighter than unary minus and accepts only integer literal
// exponents. Numbers may use scientific notation.
class formula_parser {
  public:
    formula_parser(std::string_view src, std::size_t n_vars)
        : src_(src), bld_(n_vars), n_vars_(n_vars) {}

    expr_dag run() {
        skip_ws();
        if (pos_ >= src_.size()) throw parse_error("empty formula", pos_);
        const std::uint32_t root = parse_expr();
        skip_ws();
        if (pos_ < src_.size())
            throw parse_error(std::string("unexpected trailing input '") +
                                  std::string(src_.substr(pos_)) + "'",
                              pos_);
        return bld_.take(root);
    }

  private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    std::uint32_t parse_expr() {
        std::uint32_t lhs = parse_term();
        for (;;) {
            if (eat('+')) {
                lhs = bld_.add(lhs, parse_term());
            } else if (eat('-')) {
                lhs = bld_.sub(lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    std::uint32_t parse_term() {
        std::uint32_t lhs = parse_unary();
        for (;;) {
            if (eat('*')) {
                lhs = bld_.mul(lhs, parse_unary());
            } else if (eat('/')) {
                lhs = bld_.div(lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    std::uint32_t parse_unary() {
        if (eat('-')) {
            // a signed numeric literal is a single constant, not a negation
            // node, unless a '^' follows: ^ binds tighter than unary minus,
            // so -2^2 is -(2^2)
            if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
                const literal lit = scan_literal();
                if (peek() == '^') {
                    const std::uint32_t c = bld_.constant(lit.value, lit.enc_lo, lit.enc_hi);
                    return bld_.neg(parse_power_suffix(c));
                }
                return bld_.constant(-lit.value, -lit.enc_hi, -lit.enc_lo);
            }
            return bld_.neg(parse_unary());
        }
        return parse_power();
    }

    std::uint32_t parse_power() { return parse_power_suffix(parse_atom()); }

    std::uint32_t parse_power_suffix(std::uint32_t base) {
        while (eat('^')) {
            skip_ws();
            const bool negative = eat('-');
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            if (start == pos_)
                throw parse_error("'^' requires an integer literal exponent", start);
            if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
                throw parse_error("'^' requires an integer literal exponent", start);
            long long e = 0;
            const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, e);
            if (res.ec != std::errc{})
                throw parse_error("exponent out of range", start);
            base = bld_.pow(base, negative ? -e : e);
        }
        return base;
    }

    std::uint32_t parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw parse_error("unexpected end of formula", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            const std::uint32_t inner = parse_expr();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    struct literal {
        double value;
        double enc_lo;
        double enc_hi;
    };

    // Scans an unsigned numeric literal and its tightest machine enclosure.
    literal scan_literal() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                pos_ = mark; // not an exponent, leave for the caller
            } else {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
        }
        if (start == pos_) throw parse_error("expected a number", start);
        const std::string text(src_.substr(start, pos_ - start));
        double v = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw parse_error("bad numeric literal '" + text + "'", start);
        const auto [enc_lo, enc_hi] = literal_enclosure(text, v);
        return {v, enc_lo, enc_hi};
    }

    std::uint32_t parse_number() {
        const literal lit = scan_literal();
        return bld_.constant(lit.value, lit.enc_lo, lit.enc_hi);
    }

    // Tightest machine enclosure of the decimal literal: thin when the
    // literal is exactly representable, one ulp wide otherwise.
    static std::pair<double, double> literal_enclosure(const std::string& text, double v) {
        std::size_t significant = 0;
        for (char c : text)
            if (std::isdigit(static_cast<unsigned char>(c))) ++significant;
        const long double ld = std::strtold(text.c_str(), nullptr);
        if (significant <= 17 && static_cast<long double>(v) == ld) return {v, v};
        return {detail::next_down(v), detail::next_up(v)};
    }

    std::uint32_t parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name.size() >= 2 && name[0] == 'x' &&
            std::isdigit(static_cast<unsigned char>(name[1]))) {
            unsigned long idx = 0;
            const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            if (res.ec == std::errc{} && res.ptr == name.data() + name.size()) {
                if (idx < 1 || idx > n_vars_)
                    throw variable_out_of_range("variable " + std::string(name) +
                                                    " out of range for " +
                                                    std::to_string(n_vars_) + " variable(s)",
                                                start);
                return bld_.variable(idx - 1);
            }
        }
        if (const auto fn = lookup_fn(name)) {
            if (!eat('('))
                throw parse_error("function '" + std::string(name) + "' needs an argument list",
                                  pos_);
            const std::uint32_t arg = parse_expr();
            if (!eat(')')) throw parse_error("expected ')'", pos_);
            return bld_.call(*fn, arg);
        }
        if (peek() == '(')
            throw unknown_function("unknown function '" + std::string(name) + "'", start);
        throw parse_error("unknown identifier '" + std::string(name) + "'", start);
    }

    static std::optional<std_fn> lookup_fn(std::string_view name) {
        static constexpr std::pair<std::string_view, std_fn> table[] = {
            {"exp", std_fn::exp},   {"log", std_fn::log},   {"sqrt", std_fn::sqrt},
            {"abs", std_fn::abs},   {"sin", std_fn::sin},   {"cos", std_fn::cos},
            {"tan", std_fn::tan},   {"sinh", std_fn::sinh}, {"cosh", std_fn::cosh},
            {"tanh", std_fn::tanh}, {"asin", std_fn::asin}, {"acos", std_fn::acos},
            {"atan", std_fn::atan},
        };
        for (const auto& [n, f] : table)
            if (n == name) return f;
        return std::nullopt;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    expr_dag::builder bld_;
    std::size_t n_vars_;
};

} // namespace detail

inline expr_dag expr_dag::parse(std::string_view src, std::size_t n_vars) {
    return detail::formula_parser(src, n_vars).run();
}

} // namespace ivmc

#endif
