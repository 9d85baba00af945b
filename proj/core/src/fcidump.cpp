#include "lasuscc/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"

namespace lasuscc {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

double parse_real(std::string tok, std::size_t line) {
    std::replace_if(tok.begin(), tok.end(), [](char c) { return c == 'D' || c == 'd'; }, 'E');
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(fmt::format("FCIDUMP: cannot parse '{}' as a number", tok), line);
    }
}

long parse_int(const std::string& tok, std::size_t line) {
    try {
        std::size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(fmt::format("FCIDUMP: cannot parse '{}' as an integer", tok), line);
    }
}

struct Header {
    FcidumpHeader values;
    std::size_t lines_consumed = 0;
};

// Finds the namelist terminator (&END, /END or a bare '/') in upper-cased text.
std::size_t find_terminator(const std::string& text) {
    const auto amp = text.find("&END");
    const auto slash = text.find('/');
    return std::min(amp, slash);
}

Header parse_header(std::istream& in) {
    std::string text;
    std::string line;
    std::size_t lineno = 0;
    bool started = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string up = upper(line);
        if (!started) {
            const auto pos = up.find("&FCI");
            if (pos == std::string::npos) {
                if (std::all_of(up.begin(), up.end(), [](unsigned char c) { return std::isspace(c); })) continue;
                throw ParseError("FCIDUMP: expected '&FCI' namelist header", lineno);
            }
            started = true;
            up = up.substr(pos + 4);
        }
        text += ' ';
        text += up;
        const auto term = find_terminator(text);
        if (term != std::string::npos) {
            text.resize(term);
            break;
        }
        if (in.peek() == EOF) {
            throw ParseError("FCIDUMP: namelist header is not terminated by &END or /", lineno);
        }
    }
    if (!started) {
        throw ParseError("FCIDUMP: file is empty", lineno);
    }

    std::string spaced;
    for (char c : text) {
        if (c == '=') spaced += " = ";
        else if (c == ',') spaced += ' ';
        else spaced += c;
    }
    std::istringstream ts(spaced);
    std::vector<std::string> toks;
    for (std::string t; ts >> t;) toks.push_back(t);

    std::map<std::string, std::vector<std::string>> kv;
    std::string key;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i + 1 < toks.size() && toks[i + 1] == "=") {
            key = toks[i];
            kv[key];
            ++i;
        } else if (toks[i] == "=") {
            throw ParseError("FCIDUMP: malformed namelist assignment", lineno);
        } else {
            if (key.empty()) throw ParseError(fmt::format("FCIDUMP: stray token '{}' in header", toks[i]), lineno);
            kv[key].push_back(toks[i]);
        }
    }
    auto scalar = [&](const std::string& name, bool required, long fallback) -> long {
        auto it = kv.find(name);
        if (it == kv.end()) {
            if (required) throw ParseError(fmt::format("FCIDUMP: header is missing {}", name), lineno);
            return fallback;
        }
        if (it->second.size() != 1) throw ParseError(fmt::format("FCIDUMP: {} needs exactly one value", name), lineno);
        return parse_int(it->second.front(), lineno);
    };
    Header h;
    const long norb = scalar("NORB", true, 0);
    const long nelec = scalar("NELEC", true, 0);
    const long ms2 = scalar("MS2", false, 0);
    if (norb <= 0 || nelec < 0 || nelec > 2 * norb || std::abs(ms2) > nelec || (nelec + ms2) % 2 != 0) {
        throw ParseError(fmt::format("FCIDUMP: inconsistent header NORB={} NELEC={} MS2={}", norb, nelec, ms2), lineno);
    }
    h.values = {static_cast<std::size_t>(norb), static_cast<int>(nelec), static_cast<int>(ms2)};
    h.lines_consumed = lineno;
    return h;
}

} // namespace

IntegralSet parse_fcidump(std::istream& in) {
    const Header header = parse_header(in);
    const std::size_t n = header.values.norb;
    IntegralSet ints = IntegralSet::zeros(n, (header.values.nelec + header.values.ms2) / 2,
                                          (header.values.nelec - header.values.ms2) / 2);

    std::vector<char> g_set(n * n * n * n, 0), h_set(n * n, 0);
    bool core_set = false;
    constexpr double kConflict = 1e-10;

    std::string line;
    std::size_t lineno = header.lines_consumed;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks.size() != 5) {
            throw ParseError(fmt::format("FCIDUMP: expected 'value i j k l', got {} fields", toks.size()), lineno);
        }
        const double v = parse_real(toks[0], lineno);
        if (!std::isfinite(v)) throw ParseError("FCIDUMP: non-finite integral", lineno);
        long idx[4];
        for (int a = 0; a < 4; ++a) {
            idx[a] = parse_int(toks[static_cast<std::size_t>(a) + 1], lineno);
            if (idx[a] < 0 || idx[a] > static_cast<long>(n)) {
                throw ParseError(fmt::format("FCIDUMP: orbital index {} outside 0..{}", idx[a], n), lineno);
            }
        }
        const auto [i, j, k, l] = std::tuple{idx[0], idx[1], idx[2], idx[3]};
        if (i > 0 && j > 0 && k > 0 && l > 0) {
            const auto p = static_cast<std::size_t>(i - 1), q = static_cast<std::size_t>(j - 1),
                       r = static_cast<std::size_t>(k - 1), s = static_cast<std::size_t>(l - 1);
            const std::size_t at = ((p * n + q) * n + r) * n + s;
            if (g_set[at] && std::abs(ints.g(p, q, r, s) - v) > kConflict) {
                throw ParseError(fmt::format("FCIDUMP: conflicting duplicate for ({} {}|{} {})", i, j, k, l), lineno);
            }
            ints.g.set_symmetric(p, q, r, s, v);
            for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s}, std::array{p, q, s, r},
                                      std::array{q, p, s, r}, std::array{r, s, p, q}, std::array{s, r, p, q},
                                      std::array{r, s, q, p}, std::array{s, r, q, p}})
                g_set[((a * n + b) * n + c) * n + d] = 1;
        } else if (i > 0 && j > 0 && k == 0 && l == 0) {
            const auto p = static_cast<Eigen::Index>(i - 1), q = static_cast<Eigen::Index>(j - 1);
            const std::size_t at = static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q);
            if (h_set[at] && std::abs(ints.h(p, q) - v) > kConflict) {
                throw ParseError(fmt::format("FCIDUMP: conflicting duplicate for h({} {})", i, j), lineno);
            }
            ints.h(p, q) = v;
            ints.h(q, p) = v;
            h_set[at] = h_set[static_cast<std::size_t>(q) * n + static_cast<std::size_t>(p)] = 1;
        } else if (i == 0 && j == 0 && k == 0 && l == 0) {
            if (core_set && std::abs(ints.e_core - v) > kConflict) {
                throw ParseError("FCIDUMP: conflicting duplicate core energy", lineno);
            }
            ints.e_core = v;
            core_set = true;
        } else if (i > 0 && j == 0 && k == 0 && l == 0) {
            // Orbital-energy records are informational; ignore them.
        } else {
            throw ParseError(fmt::format("FCIDUMP: unsupported index pattern {} {} {} {}", i, j, k, l), lineno);
        }
    }
    return ints;
}

IntegralSet read_fcidump(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(fmt::format("FCIDUMP: cannot open '{}'", path.string()));
    }
    try {
        return parse_fcidump(in);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

FcidumpHeader read_fcidump_header(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(fmt::format("FCIDUMP: cannot open '{}'", path.string()));
    }
    return parse_header(in).values;
}

std::string format_fcidump(const IntegralSet& ints) {
    const std::size_t n = ints.n_orb;
    std::string out;
    out += fmt::format("&FCI NORB={},NELEC={},MS2={},\n  ORBSYM=", n, ints.n_alpha + ints.n_beta,
                       ints.n_alpha - ints.n_beta);
    for (std::size_t p = 0; p < n; ++p) out += "1,";
    out += "\n  ISYM=1,\n&END\n";
    auto record = [&out](double v, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        out += fmt::format("{: .20E} {:4d} {:4d} {:4d} {:4d}\n", v, i, j, k, l);
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t k = 0; k <= i; ++k)
                for (std::size_t l = 0; l <= k; ++l) {
                    if (i * (i + 1) / 2 + j < k * (k + 1) / 2 + l) continue;
                    const double v = ints.g(i, j, k, l);
                    if (v != 0.0) record(v, i + 1, j + 1, k + 1, l + 1);
                }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = ints.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (v != 0.0) record(v, i + 1, j + 1, 0, 0);
        }
    record(ints.e_core, 0, 0, 0, 0);
    return out;
}

void write_fcidump(const IntegralSet& ints, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(fmt::format("cannot open '{}' for writing", path.string()));
    }
    const std::string text = format_fcidump(ints);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error(fmt::format("write to '{}' failed", path.string()));
    }
}

} // namespace lasuscc
