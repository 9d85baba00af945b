#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "lasuscc/errors.hpp"
#include "lasuscc/fcidump.hpp"
#include "lasuscc/fock.hpp"

using namespace lasuscc;

namespace {

IntegralSet parse(const std::string& text) {
    std::istringstream in(text);
    return parse_fcidump(in);
}

double max_diff(const IntegralSet& a, const IntegralSet& b) {
    double d = std::abs(a.e_core - b.e_core);
    d = std::max(d, (a.h - b.h).cwiseAbs().maxCoeff());
    for (std::size_t i = 0; i < a.g.data().size(); ++i) d = std::max(d, std::abs(a.g.data()[i] - b.g.data()[i]));
    return d;
}

} // namespace

TEST(Fcidump, CoreEnergyOnly) {
    const IntegralSet s = parse("&FCI NORB=1,NELEC=2,MS2=0,\n&END\n  0.5 0 0 0 0\n");
    EXPECT_EQ(s.n_orb, 1u);
    EXPECT_DOUBLE_EQ(s.e_core, 0.5);
    EXPECT_DOUBLE_EQ(s.h(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(s.g(0, 0, 0, 0), 0.0);
    EXPECT_EQ(s.n_alpha, 1);
    EXPECT_EQ(s.n_beta, 1);
}

TEST(Fcidump, HeaderVariants) {
    const std::string body = " 1.0 1 1 1 1\n -0.5 1 1 0 0\n 0.25 0 0 0 0\n";
    const IntegralSet a = parse("&FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n ISYM=1,\n&END\n" + body);
    const IntegralSet b = parse("&fci norb = 1, nelec = 2,\r\n ms2=0 /\r\n" + body);
    const IntegralSet c = parse(" &FCI NORB=1 NELEC=2 MS2=0 &END\n" + body);
    EXPECT_EQ(max_diff(a, b), 0.0);
    EXPECT_EQ(max_diff(a, c), 0.0);
    EXPECT_DOUBLE_EQ(a.g(0, 0, 0, 0), 1.0);
    EXPECT_DOUBLE_EQ(a.h(0, 0), -0.5);
}

TEST(Fcidump, FortranExponentsAndOrbitalEnergyRecordsAccepted) {
    const IntegralSet s = parse("&FCI NORB=2,NELEC=2,MS2=0 &END\n 1.5D-01 2 1 0 0\n -0.3 1 0 0 0\n");
    EXPECT_DOUBLE_EQ(s.h(0, 1), 0.15);
    EXPECT_DOUBLE_EQ(s.h(1, 0), 0.15);
}

TEST(Fcidump, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("&FCI NORB=2,NELEC=2,MS2=0 &END\n 1.0 1 1 1 1\n 1.0 3 1 1 1\n"), 3u);
    EXPECT_EQ(line_of("&FCI NORB=2,NELEC=2,MS2=0 &END\n 1.0 2 1 1 1\n 1.1 1 2 1 1\n"), 3u);
    EXPECT_EQ(line_of("&FCI NORB=2,NELEC=2,MS2=0 &END\n 1.0 2 1\n"), 2u);
    EXPECT_GT(line_of("NORB=2\n"), 0u);
    EXPECT_GT(line_of("&FCI NELEC=2 &END\n"), 0u);
    // Equal duplicates within 1e-10 are fine.
    EXPECT_NO_THROW(parse("&FCI NORB=2,NELEC=2,MS2=0 &END\n 1.0 2 1 1 1\n 1.00000000001 1 2 1 1\n"));
}

TEST(Fcidump, ExpandedAndReducedTensorsAgree) {
    const IntegralSet r = fixtures::random_integrals(3, 1, 1, 5);
    std::ostringstream full;
    full << "&FCI NORB=3,NELEC=2,MS2=0 &END\n";
    full.precision(17);
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q)
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b) full << r.g(p, q, a, b) << ' ' << p + 1 << ' ' << q + 1 << ' ' << a + 1 << ' ' << b + 1 << '\n';
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) full << r.h(p, q) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    full << r.e_core << " 0 0 0 0\n";
    EXPECT_LE(max_diff(parse(full.str()), parse(format_fcidump(r))), 1e-15);
}

TEST(Fcidump, RoundTripIsExactAndDeterministic) {
    const IntegralSet r = fixtures::random_integrals(4, 2, 1, 9);
    const std::string once = format_fcidump(r);
    const IntegralSet back = parse(once);
    EXPECT_LE(max_diff(r, back), 1e-12);
    EXPECT_EQ(back.n_alpha, 2);
    EXPECT_EQ(back.n_beta, 1);
    EXPECT_EQ(format_fcidump(back), once);
}

TEST(Fcidump, ZeroSetWritesHeaderAndCoreLineOnly) {
    const IntegralSet z = IntegralSet::zeros(2, 1, 1);
    const std::string text = format_fcidump(z);
    std::istringstream in(text);
    std::string line;
    int records = 0;
    bool in_header = true;
    while (std::getline(in, line)) {
        if (in_header) {
            if (line.find("&END") != std::string::npos) in_header = false;
            continue;
        }
        ++records;
        EXPECT_NE(line.find(" 0    0    0    0"), std::string::npos) << line;
    }
    EXPECT_EQ(records, 1);
}

TEST(Fcidump, NoSymmetryEquivalentDuplicates) {
    const IntegralSet r = fixtures::random_integrals(3, 1, 1, 3);
    std::istringstream in(format_fcidump(r));
    std::string line;
    std::set<std::array<int, 4>> seen;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = line.find("&END") == std::string::npos;
            continue;
        }
        std::istringstream ls(line);
        double v;
        std::array<int, 4> k{};
        ls >> v >> k[0] >> k[1] >> k[2] >> k[3];
        if (k[1] > k[0]) std::swap(k[0], k[1]);
        if (k[3] > k[2]) std::swap(k[2], k[3]);
        if (std::pair(k[2], k[3]) > std::pair(k[0], k[1])) std::swap(k[0], k[2]), std::swap(k[1], k[3]);
        EXPECT_TRUE(seen.insert(k).second) << line;
    }
}

TEST(Fcidump, CheckedInH4MatchesNativePipeline) {
    const IntegralSet file = read_fcidump(std::string(LASUSCC_TEST_DATA) + "/h4.fcidump");
    const auto native = fixtures::hydrogen_ladder(2);
    EXPECT_LE(max_diff(file, native.ints), 1e-12);
    const double a = casci_ground_state(file, {4, 2, 2}).energy;
    const double b = casci_ground_state(native.ints, {4, 2, 2}).energy;
    EXPECT_NEAR(a, b, 1e-10);
}

TEST(Fcidump, WriteAndReadFile) {
    const auto path = std::filesystem::temp_directory_path() / "lasuscc_roundtrip.fcidump";
    const IntegralSet r = fixtures::random_integrals(2, 1, 1, 1);
    write_fcidump(r, path);
    EXPECT_LE(max_diff(read_fcidump(path), r), 1e-12);
    const auto hdr = read_fcidump_header(path);
    EXPECT_EQ(hdr.norb, 2u);
    EXPECT_EQ(hdr.nelec, 2);
    std::filesystem::remove(path);
    EXPECT_THROW(read_fcidump(path), Error);
}
