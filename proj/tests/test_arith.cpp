#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "vanlat/int.hpp"
#include "vanlat/linalg.hpp"
#include "vanlat/matrix.hpp"
#include "vanlat/rng.hpp"
#include "vanlat/smith.hpp"

using namespace vanlat;

namespace {

IMat random_imat(SplitMix64& rng, std::size_t r, std::size_t c, long long lo, long long hi) {
    IMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = int_of(rng.range(lo, hi));
    return m;
}

// independent of vanlat::determinant (Bareiss): direct first-row expansion
Int det_laplace(const IMat& m) {
    std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IMat sub(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub(r - 1, cc++) = m(r, c);
            }
        }
        Int term = m(0, j) * det_laplace(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

void combinations(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) break;
            if (i == 0) return;
        }
        if (idx[i] == i + n - k) return;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// independent oracle for Smith divisors: d_k = D_k / D_{k-1} with D_k the
// gcd of all k x k minors
std::vector<Int> divisors_via_minors(const IMat& a) {
    std::size_t n = std::min(a.rows(), a.cols());
    std::vector<Int> d(n, Int(0));
    Int prev = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Int g = 0;
        combinations(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
            combinations(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
                IMat sub(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rows[i], cols[j]);
                g = gcd(g, det_laplace(sub));
            });
        });
        if (g == 0) break;  // rank reached; remaining divisors stay 0
        d[k - 1] = g / prev;
        prev = g;
    }
    return d;
}

}  // namespace

TEST_CASE("decimal string parsing is strict") {
    CHECK(parse_int("0") == 0);
    CHECK(parse_int("-17") == -17);
    CHECK(parse_int("123456789012345678901234567890") == Int("123456789012345678901234567890"));
    CHECK_THROWS_AS(parse_int("+1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int(" 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int("01"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_int("1.5"), std::invalid_argument);
    CHECK(parse_rat("3/6") == make_rat(1, 2));
    CHECK(parse_rat("-4/2") == Rat(-2));
    CHECK(to_string(parse_rat("-4/6")) == "-2/3");
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("splitmix64 matches the reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
    SplitMix64 a = substream(42, 7);
    SplitMix64 b = substream(42, 7);
    for (int i = 0; i < 32; ++i) CHECK(a.next() == b.next());
    SplitMix64 c(99);
    for (int i = 0; i < 1000; ++i) {
        long long v = c.range(-5, 7);
        CHECK(v >= -5);
        CHECK(v <= 7);
    }
}

TEST_CASE("matrix arithmetic basics") {
    IMat a(2, 2, {Int(1), Int(2), Int(3), Int(4)});
    IMat b(2, 2, {Int(0), Int(1), Int(1), Int(0)});
    CHECK((a * b) == IMat(2, 2, {Int(2), Int(1), Int(4), Int(3)}));
    CHECK((a + b - a) == b);
    CHECK(a.transpose().transpose() == a);
    CHECK(IMat::identity(3).is_identity());
    CHECK(power(to_rational(a), Int(0)).is_identity());
    CHECK(power(to_rational(b), Int(5)) == to_rational(b));

    QMat q(2, 2, {Rat(1), make_rat(1, 2), Rat(0), Rat(1)});
    auto qi = inverse(q);
    REQUIRE(qi.has_value());
    CHECK((q * *qi).is_identity());
    CHECK_FALSE(inverse(QMat(2, 2)).has_value());
}

TEST_CASE("bareiss determinant agrees with laplace expansion") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng.below(5);
        IMat m = random_imat(rng, n, n, -9, 9);
        CHECK(determinant(m) == det_laplace(m));
    }
    CHECK(determinant(IMat(0, 0)) == 1);
}

TEST_CASE("rref, kernel, and solve over the rationals") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng.below(5), c = 1 + rng.below(6);
        QMat m = to_rational(random_imat(rng, r, c, -6, 6));
        QMat copy = m;
        std::size_t rk = rref(copy).size();

        auto kb = kernel_basis(m);
        CHECK(kb.size() == c - rk);  // rank-nullity
        for (const QVec& v : kb) CHECK(is_zero(m * v));

        QVec x0(c);
        for (auto& e : x0) e = make_rat(int_of(rng.range(-5, 5)), int_of(rng.range(1, 3)));
        auto sol = solve(m, m * x0);
        REQUIRE(sol.has_value());
        CHECK(m * *sol == m * x0);
    }
    // inconsistent system
    QMat m(2, 1, {Rat(1), Rat(1)});
    CHECK_FALSE(solve(m, QVec{Rat(0), Rat(1)}).has_value());
}

TEST_CASE("span reducer membership and quotient coordinates") {
    SpanReducer s(3);
    CHECK(s.add(QVec{Rat(1), Rat(2), Rat(0)}));
    CHECK_FALSE(s.add(QVec{Rat(2), Rat(4), Rat(0)}));
    CHECK(s.add(QVec{Rat(0), Rat(1), Rat(1)}));
    CHECK(s.dim() == 2);
    CHECK(s.contains(QVec{Rat(1), Rat(3), Rat(1)}));
    CHECK_FALSE(s.contains(QVec{Rat(0), Rat(0), Rat(1)}));
    auto comp = s.complement();
    REQUIRE(comp.size() == 1);
    QVec q = s.quotient_coords(QVec{Rat(0), Rat(0), Rat(5)});
    REQUIRE(q.size() == 1);
    CHECK(q[0] != 0);
    // vectors in the span reduce to zero
    CHECK(is_zero(s.quotient_coords(QVec{Rat(3), Rat(7), Rat(1)})));
}

TEST_CASE("smith normal form on pinned examples") {
    auto s = smith_normal_form(IMat::identity(4));
    CHECK(s.divisors() == std::vector<Int>{Int(1), Int(1), Int(1), Int(1)});

    IMat d23(2, 2, {Int(2), Int(0), Int(0), Int(3)});
    CHECK(smith_normal_form(d23).divisors() == std::vector<Int>{Int(1), Int(6)});

    IMat m(2, 2, {Int(2), Int(4), Int(6), Int(8)});
    CHECK(smith_normal_form(m).divisors() == std::vector<Int>{Int(2), Int(4)});

    CHECK(smith_normal_form(IMat(3, 3)).divisors() == std::vector<Int>{Int(0), Int(0), Int(0)});
}

TEST_CASE("smith normal form properties on random matrices") {
    SplitMix64 rng(555);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t r = 1 + rng.below(8), c = 1 + rng.below(8);
        IMat a = random_imat(rng, r, c, -20, 20);
        SmithDecomposition s = smith_normal_form(a);
        CHECK(s.u * a * s.w == s.d);
        CHECK(is_unimodular(s.u));
        CHECK(is_unimodular(s.w));
        auto div = s.divisors();
        for (std::size_t i = 0; i < div.size(); ++i) {
            CHECK(div[i] >= 0);
            if (i + 1 < div.size()) {
                if (div[i] == 0) CHECK(div[i + 1] == 0);
                else CHECK(div[i + 1] % div[i] == 0);
            }
        }
        for (std::size_t i = 0; i < s.d.rows(); ++i)
            for (std::size_t j = 0; j < s.d.cols(); ++j)
                if (i != j) CHECK(s.d(i, j) == 0);
    }
}

TEST_CASE("smith divisors match the minor-gcd oracle") {
    SplitMix64 rng(808);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
        IMat a = random_imat(rng, r, c, -7, 7);
        CHECK(smith_normal_form(a).divisors() == divisors_via_minors(a));
    }
}

TEST_CASE("integral membership on pinned examples") {
    IMat two(1, 1, {Int(2)});
    auto r = integral_membership(two, IVec{Int(3)});
    CHECK_FALSE(r.x.has_value());
    CHECK(r.obstruction == 0);
    r = integral_membership(two, IVec{Int(6)});
    REQUIRE(r.x.has_value());
    CHECK((*r.x)[0] == 3);

    IMat wide(1, 2, {Int(2), Int(1)});
    r = integral_membership(wide, IVec{Int(3)});
    REQUIRE(r.x.has_value());
    CHECK(wide * *r.x == IVec{Int(3)});

    r = integral_membership(IMat(2, 2), IVec{Int(0), Int(1)});
    CHECK_FALSE(r.x.has_value());
    REQUIRE(r.obstruction.has_value());

    r = integral_membership(IMat(2, 2), IVec{Int(0), Int(0)});
    REQUIRE(r.x.has_value());
    CHECK(is_zero(*r.x));
}

TEST_CASE("integral membership agrees with constructed and brute-forced cases") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t r = 1 + rng.below(3), c = 1 + rng.below(3);
        IMat a = random_imat(rng, r, c, -4, 4);
        IVec x0(c);
        for (auto& e : x0) e = int_of(rng.range(-5, 5));
        auto sol = integral_membership(a, a * x0);
        REQUIRE(sol.x.has_value());
        CHECK(a * *sol.x == a * x0);
    }
    // solver claims of unsolvability are checked against a box search
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng.below(2), c = 1 + rng.below(2);
        IMat a = random_imat(rng, r, c, -3, 3);
        IVec b(r);
        for (auto& e : b) e = int_of(rng.range(-6, 6));
        auto sol = integral_membership(a, b);
        if (sol.x) {
            CHECK(a * *sol.x == b);
        } else {
            bool found = false;
            std::vector<long long> x(c, -6);
            for (;;) {
                IVec xi(c);
                for (std::size_t i = 0; i < c; ++i) xi[i] = int_of(x[i]);
                if (a * xi == b) {
                    found = true;
                    break;
                }
                std::size_t i = 0;
                while (i < c && ++x[i] > 6) x[i++] = -6;
                if (i == c) break;
            }
            CHECK_FALSE(found);
        }
    }
}
