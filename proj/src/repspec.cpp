#include "vvef/repspec.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace vvef {

namespace {

std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

std::int64_t parse_int(const std::string& s)
{
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("expected an integer, got '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument("expected an integer, got '" + s + "'");
    return v;
}

// top-level comma split inside parentheses
std::vector<std::string> split_args(std::string_view s)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (s[i] == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
        if (depth < 0)
            throw std::invalid_argument("unbalanced parentheses in rep spec");
    }
    if (depth != 0)
        throw std::invalid_argument("unbalanced parentheses in rep spec");
    out.push_back(trim(s.substr(start)));
    return out;
}

bool call_form(const std::string& s, const std::string& name, std::string& inner)
{
    if (s.size() < name.size() + 2 || s.compare(0, name.size() + 1, name + "(") != 0 || s.back() != ')')
        return false;
    inner = s.substr(name.size() + 1, s.size() - name.size() - 2);
    return true;
}

}  // namespace

DirichletChar parse_char(std::string_view s)
{
    std::string t = trim(s);
    auto colon = t.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("character must be MOD:IDX");
    std::int64_t N = parse_int(t.substr(0, colon));
    if (N < 1)
        throw std::invalid_argument("character modulus must be positive");
    std::string idx = t.substr(colon + 1);
    if (idx == "triv")
        return DirichletChar(N);
    std::int64_t i = parse_int(idx);
    auto chars = enumerate_chars(N);
    if (i < 0 || i >= static_cast<std::int64_t>(chars.size()))
        throw std::invalid_argument("character index out of range for modulus " + std::to_string(N));
    return chars[i];
}

RepPtr rho3_rep()
{
    static const RepPtr r = [] {
        CycMatrix T(3, 3), S(3, 3);
        long t[3][3] = {{1, 0, 0}, {0, 0, 1}, {-1, -1, -1}};
        long s[3][3] = {{0, 1, 0}, {1, 0, 0}, {-1, -1, -1}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (t[i][j])
                    T.set(i, j, CycNum(t[i][j]));
                if (s[i][j])
                    S.set(i, j, CycNum(s[i][j]));
            }
        return explicit_rep(S, T, "rho3");
    }();
    return r;
}

RepPtr parse_rep(std::string_view spec)
{
    std::string s = trim(spec);
    std::string inner;
    if (s == "triv")
        return trivial_rep();
    if (s == "rho3")
        return rho3_rep();
    if (call_form(s, "tensor", inner)) {
        auto args = split_args(inner);
        if (args.size() != 2)
            throw std::invalid_argument("tensor takes two arguments");
        return tensor_rep(parse_rep(args[0]), parse_rep(args[1]));
    }
    if (call_form(s, "dual", inner))
        return dual_rep(parse_rep(inner));
    if (call_form(s, "sum", inner)) {
        std::vector<RepPtr> parts;
        for (const auto& a : split_args(inner))
            parts.push_back(parse_rep(a));
        return sum_rep(parts);
    }
    if (s.rfind("ind:", 0) == 0) {
        auto rest = s.substr(4);
        auto colon = rest.find(':');
        std::int64_t N = parse_int(colon == std::string::npos ? rest : rest.substr(0, colon));
        if (N < 1)
            throw std::invalid_argument("induction level must be positive");
        std::string c = colon == std::string::npos ? "triv" : rest.substr(colon + 1);
        return induced_gamma0(N, parse_char(std::to_string(N) + ":" + c));
    }
    if (s.rfind("hecke:", 0) == 0) {
        auto rest = s.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("hecke spec must be hecke:M:SPEC");
        std::int64_t M = parse_int(rest.substr(0, colon));
        if (M < 1)
            throw std::invalid_argument("Hecke index must be positive");
        return hecke_rep(M, parse_rep(rest.substr(colon + 1)));
    }
    throw std::invalid_argument("unrecognized rep spec '" + s + "'");
}

}  // namespace vvef
