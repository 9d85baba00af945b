#include <bit>

#include <fmt/format.h>

#include "lasuscc/errors.hpp"
#include "lasuscc/fock.hpp"

namespace lasuscc {

std::size_t binomial(std::size_t n, std::size_t k) noexcept {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<Bitmask> enumerate_strings(int n_orb, int n_occ) {
    if (n_orb < 0 || n_orb > 63 || n_occ < 0 || n_occ > n_orb) {
        throw ValidationError(fmt::format("cannot place {} electrons in {} orbitals (need 0 <= n_occ <= n_orb <= 63)",
                                          n_occ, n_orb));
    }
    std::vector<Bitmask> out;
    out.reserve(binomial(static_cast<std::size_t>(n_orb), static_cast<std::size_t>(n_occ)));
    if (n_occ == 0) {
        out.push_back(0);
        return out;
    }
    // Gosper's hack walks fixed-popcount masks in ascending order.
    Bitmask m = (Bitmask{1} << n_occ) - 1;
    const Bitmask limit = Bitmask{1} << n_orb;
    while (m < limit) {
        out.push_back(m);
        const Bitmask c = m & (~m + 1);
        const Bitmask r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    return out;
}

std::size_t string_rank(Bitmask mask) noexcept {
    std::size_t rank = 0;
    std::size_t k = 1;
    while (mask) {
        const int p = std::countr_zero(mask);
        rank += binomial(static_cast<std::size_t>(p), k);
        ++k;
        mask &= mask - 1;
    }
    return rank;
}

int excitation_sign(Bitmask mask, int p, int q) noexcept {
    const Bitmask below_q = (Bitmask{1} << q) - 1;
    const Bitmask removed = mask & ~(Bitmask{1} << q);
    const Bitmask below_p = (Bitmask{1} << p) - 1;
    const int n = std::popcount(mask & below_q) + std::popcount(removed & below_p);
    return (n & 1) ? -1 : 1;
}

StringSpace::StringSpace(int n_orb, int n_occ)
    : n_orb_(n_orb), n_occ_(n_occ), strings_(enumerate_strings(n_orb, n_occ)) {
    offsets_.reserve(strings_.size() + 1);
    offsets_.push_back(0);
    for (Bitmask s : strings_) {
        for (int q = 0; q < n_orb; ++q) {
            if (!((s >> q) & 1)) continue;
            for (int p = 0; p < n_orb; ++p) {
                if (p != q && ((s >> p) & 1)) continue;
                const Bitmask t = (s & ~(Bitmask{1} << q)) | (Bitmask{1} << p);
                moves_.push_back({static_cast<std::uint16_t>(p), static_cast<std::uint16_t>(q),
                                  static_cast<std::int8_t>(excitation_sign(s, p, q)),
                                  static_cast<std::uint32_t>(string_rank(t))});
            }
        }
        offsets_.push_back(moves_.size());
    }
}

} // namespace lasuscc
