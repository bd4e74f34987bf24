#ifndef NCWARING_PARSE_HPP
#define NCWARING_PARSE_HPP

#include <cctype>
#include <cmath>
#include <charconv>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ncwaring/errors.hpp"
#include "ncwaring/ncpoly.hpp"

// Polynomial text format
//
//   poly   := [sign] term (('+'|'-') term)*
//   term   := coeff '*' mono | mono | coeff
//   coeff  := real | '(' real [('+'|'-') real 'i'] ')' | '(' real 'i' ')'
//   mono   := factor ('*' factor)*
//   factor := 'x' uint ('^' uint)?
//
// Whitespace is insignificant. `x3^2` is the word (3,3); factor order inside a
// term is preserved, like terms are combined.

namespace ncwaring
{

struct ParseOptions
{
    /// Reject coefficients with an imaginary part.
    bool real_only = false;
};

namespace detail
{

class PolyParser
{
public:
    PolyParser(std::string_view text, int g, ParseOptions opt) : s_(text), g_(g), opt_(opt) {}

    NCPolynomial parse()
    {
        NCPolynomial p(g_);
        skip_ws();
        double sign = 1.0;
        if (peek() == '+' || peek() == '-')
        {
            sign = (get() == '-') ? -1.0 : 1.0;
        }
        parse_term(p, sign);
        while (true)
        {
            skip_ws();
            if (at_end())
            {
                break;
            }
            const char op = peek();
            if (op != '+' && op != '-')
            {
                throw ParseError("expected '+' or '-'", pos_);
            }
            ++pos_;
            parse_term(p, op == '-' ? -1.0 : 1.0);
        }
        return p;
    }

private:
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    char get() { return s_[pos_++]; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
        {
            ++pos_;
        }
    }

    void expect(char c)
    {
        skip_ws();
        if (peek() != c)
        {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    double parse_real()
    {
        skip_ws();
        // std::from_chars rejects a leading '+', so parse the magnitude and
        // apply the sign separately.
        const bool neg = peek() == '-';
        if (peek() == '+' || peek() == '-')
        {
            ++pos_;
        }
        skip_ws();
        double value = 0.0;
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first || *first == '-' || !std::isfinite(value))
        {
            throw ParseError("expected a number", pos_);
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return neg ? -value : value;
    }

    unsigned parse_uint()
    {
        skip_ws();
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first)
        {
            throw ParseError("expected an unsigned integer", pos_);
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    Coeff parse_coeff()
    {
        skip_ws();
        if (peek() != '(')
        {
            return {parse_real(), 0.0};
        }
        ++pos_;
        const double first = parse_real();
        skip_ws();
        Coeff c{first, 0.0};
        if (peek() == 'i')
        {
            ++pos_;
            c = {0.0, first};
        }
        else if (peek() == '+' || peek() == '-')
        {
            const bool neg = get() == '-';
            skip_ws();
            const double im = parse_real();
            expect('i');
            c = {first, neg ? -im : im};
        }
        expect(')');
        if (opt_.real_only && c.imag() != 0.0)
        {
            throw ParseError("complex coefficient not allowed in real mode", pos_);
        }
        return c;
    }

    void parse_factor(std::vector<int>& word)
    {
        skip_ws();
        const std::size_t at = pos_;
        if (peek() != 'x')
        {
            throw ParseError("expected variable 'x<index>'", pos_);
        }
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek())))
        {
            throw ParseError("expected variable index", pos_);
        }
        const unsigned idx = parse_uint();
        if (idx < 1 || idx > static_cast<unsigned>(g_))
        {
            throw ArityError("variable x" + std::to_string(idx) + " at position " +
                             std::to_string(at) + " out of range for g = " + std::to_string(g_));
        }
        unsigned power = 1;
        skip_ws();
        if (peek() == '^')
        {
            ++pos_;
            power = parse_uint();
            if (power == 0)
            {
                throw ParseError("exponent must be positive", pos_);
            }
        }
        word.insert(word.end(), power, static_cast<int>(idx));
    }

    void parse_term(NCPolynomial& p, double sign)
    {
        skip_ws();
        Coeff c{1.0, 0.0};
        std::vector<int> word;
        if (peek() == 'x')
        {
            parse_mono(word);
        }
        else
        {
            c = parse_coeff();
            skip_ws();
            if (peek() == '*')
            {
                ++pos_;
                parse_mono(word);
            }
        }
        p.add_term(Word(std::move(word)), sign * c);
    }

    void parse_mono(std::vector<int>& word)
    {
        parse_factor(word);
        while (true)
        {
            skip_ws();
            if (peek() != '*')
            {
                return;
            }
            ++pos_;
            parse_factor(word);
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int g_;
    ParseOptions opt_;
};

inline std::string format_real(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <typename Factors>
std::string format_term(Coeff c, bool first, const Factors& factors)
{
    std::string out;
    bool negative = false;
    std::string coeff_text;
    if (c.imag() == 0.0)
    {
        negative = c.real() < 0.0;
        const double mag = negative ? -c.real() : c.real();
        if (mag != 1.0 || factors.empty())
        {
            coeff_text = format_real(mag);
        }
    }
    else
    {
        coeff_text = "(" + format_real(c.real()) + (c.imag() < 0.0 ? "-" : "+") +
                     format_real(std::abs(c.imag())) + "i)";
    }
    if (first)
    {
        out += negative ? "-" : "";
    }
    else
    {
        out += negative ? " - " : " + ";
    }
    out += coeff_text;
    if (!coeff_text.empty() && !factors.empty())
    {
        out += "*";
    }
    for (std::size_t k = 0; k < factors.size(); ++k)
    {
        out += (k ? "*" : "") + factors[k];
    }
    return out;
}

} // namespace detail

/// Parses polynomial text over variables x_1..x_g.
inline NCPolynomial parse_ncpoly(std::string_view text, int g, ParseOptions opt = {})
{
    return detail::PolyParser(text, g, opt).parse();
}

/// Largest `x<k>` index mentioned in `text` (at least 1).
inline int infer_arity(std::string_view text)
{
    int g = 1;
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        if (text[i] != 'x')
        {
            continue;
        }
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + text.size(), v);
        if (ec == std::errc{} && v > static_cast<unsigned>(g))
        {
            g = static_cast<int>(v);
        }
    }
    return g;
}

/// Canonical text: terms by (degree, word), repeated letters folded into `^`.
/// The output parses back to an identical polynomial.
inline std::string to_string(const NCPolynomial& p)
{
    if (p.is_zero())
    {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms())
    {
        std::vector<std::string> factors;
        for (std::size_t k = 0; k < w.size();)
        {
            std::size_t run = 1;
            while (k + run < w.size() && w[k + run] == w[k])
            {
                ++run;
            }
            std::string f = "x" + std::to_string(w[k]);
            if (run > 1)
            {
                f += "^" + std::to_string(run);
            }
            factors.push_back(std::move(f));
            k += run;
        }
        out += detail::format_term(c, first, factors);
        first = false;
    }
    return out;
}

inline std::string to_string(const CPolynomial& p)
{
    if (p.is_zero())
    {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms())
    {
        std::vector<std::string> factors;
        for (int j = 0; j < m.arity(); ++j)
        {
            if (m[static_cast<std::size_t>(j)] == 0)
            {
                continue;
            }
            std::string f = "X" + std::to_string(j + 1);
            if (m[static_cast<std::size_t>(j)] > 1)
            {
                f += "^" + std::to_string(m[static_cast<std::size_t>(j)]);
            }
            factors.push_back(std::move(f));
        }
        out += detail::format_term(c, first, factors);
        first = false;
    }
    return out;
}

} // namespace ncwaring

#endif // NCWARING_PARSE_HPP
