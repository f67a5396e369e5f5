#include "graph_entropy/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace graph_entropy {

std::string to_string(const Rational& r)
{
    return r.get_str(10);
}

Rational parse_rational(std::string_view text)
{
    auto valid_integer = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && s.front() == '-')
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };

    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!valid_integer(num, true) || (slash != std::string_view::npos && !valid_integer(den, false)))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");

    Rational r;
    r.get_num() = mpz_class(std::string(num), 10);
    r.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

}  // namespace graph_entropy
