#include <cmath>
#include <complex>

#include "doctest.h"
#include "genrank/generation.hpp"
#include "genrank/json_io.hpp"
#include "genrank/matrix.hpp"

using namespace genrank;
using std::complex;

namespace {
const complex<double> I(0.0, 1.0);

CMat mat2(complex<double> a, complex<double> b, complex<double> c, complex<double> d) {
    CMat m(2, 2);
    m << a, b, c, d;
    return m;
}
}  // namespace

TEST_CASE("operator norm is the largest singular value") {
    CMat m = CMat::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = -4.0;
    CHECK(operator_norm(m) == doctest::Approx(4.0));
    CHECK(operator_norm(CMat::Zero(3, 3)) == doctest::Approx(0.0));
    CMat r = mat2(0, 1, 0, 0);
    CHECK(operator_norm(5.0 * r) == doctest::Approx(5.0));
}

TEST_CASE("tuple norm and distance") {
    HermitianTuple t;
    t.n = 2;
    t.entries = {mat2(1, 0, 0, -1), mat2(0, 1, 1, 0)};
    CHECK(tuple_norm(t) == doctest::Approx(1.0));

    HermitianTuple s = t;
    s.entries[1] = mat2(0, 0.5, 0.5, 0);
    CHECK(tuple_distance(t, s) == doctest::Approx(0.5));
    CHECK(tuple_distance(t, t) == doctest::Approx(0.0));

    HermitianTuple shorter;
    shorter.n = 2;
    shorter.entries = {mat2(1, 0, 0, -1)};
    CHECK_THROWS_AS((void)tuple_distance(t, shorter), LengthMismatch);
}

TEST_CASE("hermitian check uses a scale-aware tolerance") {
    CMat h = mat2(1, 2.0 + I, 2.0 - I, 3);
    CHECK(is_hermitian(h));

    CMat skew = mat2(0, 1, -1, 0);
    CHECK(!is_hermitian(skew));

    // Perturbation below tolerance keeps the verdict, above flips it.
    double tol = hermitian_tolerance(h);
    CMat almost = h;
    almost(0, 1) += 0.01 * tol;
    CHECK(is_hermitian(almost));
    CMat broken = h;
    broken(0, 1) += 100.0 * tol;
    CHECK(!is_hermitian(broken));

    // Tolerance scales with the matrix, so a large Hermitian matrix with
    // proportionally tiny asymmetry still passes.
    CMat big = 1e8 * h;
    big(1, 0) += 1e-4;
    CHECK(is_hermitian(big));
}

TEST_CASE("spectral decomposition is an ascending exact factorization") {
    HermitianTuple t = random_hermitian_tuple(5, 1, 42);
    const CMat& h = t.entries[0];
    SpectralData sd = spectral_decomposition(h);

    for (int i = 0; i + 1 < sd.eigenvalues.size(); ++i)
        CHECK(sd.eigenvalues[i] <= sd.eigenvalues[i + 1]);

    CMat rebuilt = sd.unitary * sd.eigenvalues.asDiagonal() * sd.unitary.adjoint();
    CHECK(operator_norm(rebuilt - h) < 1e-12 * std::max(1.0, operator_norm(h)));
    CHECK(operator_norm(sd.unitary * sd.unitary.adjoint() - CMat::Identity(5, 5)) < 1e-12);

    // Deterministic phase convention: decomposing twice gives the same U.
    SpectralData sd2 = spectral_decomposition(h);
    CHECK(operator_norm(sd.unitary - sd2.unitary) == doctest::Approx(0.0));

    CHECK_THROWS_AS((void)spectral_decomposition(mat2(0, 1, 0, 0)), NonHermitianInput);
}

TEST_CASE("piecewise linear functions interpolate and extend constantly") {
    PiecewiseLinearFn f;
    f.breakpoints = {0.0, 1.0, 3.0};
    f.values = {0.0, 2.0, 0.0};

    CHECK(f(0.0) == doctest::Approx(0.0));
    CHECK(f(0.5) == doctest::Approx(1.0));
    CHECK(f(1.0) == doctest::Approx(2.0));
    CHECK(f(2.0) == doctest::Approx(1.0));
    CHECK(f(3.0) == doctest::Approx(0.0));
    // Constant beyond the ends.
    CHECK(f(-5.0) == doctest::Approx(0.0));
    CHECK(f(10.0) == doctest::Approx(0.0));
}

TEST_CASE("functional calculus acts on the spectrum") {
    PiecewiseLinearFn sq;
    sq.breakpoints = {0.0, 1.0, 2.0, 3.0};
    sq.values = {0.0, 1.0, 4.0, 9.0};

    CMat d = CMat::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    d(2, 2) = 3.0;
    CMat fd = apply_function(d, sq);
    CHECK(operator_norm(fd - d * d) < 1e-12);

    // Conjugation equivariance: f(u d u*) = u f(d) u*.
    CMat u(3, 3);
    double c = std::cos(0.7), s = std::sin(0.7);
    u << c, -s, 0, s, c, 0, 0, 0, 1;
    CMat h = u * d * u.adjoint();
    CHECK(operator_norm(apply_function(h, sq) - u * fd * u.adjoint()) < 1e-12);
}

TEST_CASE("direct sums stack entries blockwise") {
    HermitianTuple a = random_hermitian_tuple(2, 2, 1);
    HermitianTuple b = random_hermitian_tuple(3, 2, 2);
    HermitianTuple s = direct_sum_tuples(a, b);
    CHECK(s.n == 5);
    CHECK(s.k() == 2);
    CHECK(operator_norm(s.entries[0].block(0, 0, 2, 2) - a.entries[0]) == doctest::Approx(0.0));
    CHECK(operator_norm(s.entries[1].block(2, 2, 3, 3) - b.entries[1]) == doctest::Approx(0.0));
    CHECK(operator_norm(s.entries[0].block(0, 2, 2, 3)) == doctest::Approx(0.0));

    HermitianTuple c = random_hermitian_tuple(3, 3, 3);
    CHECK_THROWS_AS((void)direct_sum_tuples(a, c), LengthMismatch);
}

TEST_CASE("complexification halves the length and keeps the closure") {
    HermitianTuple t = random_hermitian_tuple(3, 4, 7);
    std::vector<CMat> z = complexify_tuple(t);
    REQUIRE(z.size() == 2);
    CHECK(operator_norm(z[0] - (t.entries[0] + I * t.entries[2])) < 1e-14);
    CHECK(operator_norm(z[1] - (t.entries[1] + I * t.entries[3])) < 1e-14);

    // Same word closure from half as many (non-Hermitian) generators.
    int dim_full = generated_algebra(t).dimension();
    int dim_half = generated_algebra(z, t.n).dimension();
    CHECK(dim_full == dim_half);

    HermitianTuple odd = random_hermitian_tuple(3, 3, 7);
    CHECK_THROWS_AS((void)complexify_tuple(odd), OddLength);
}

TEST_CASE("random tuples are deterministic with a prefix property") {
    HermitianTuple a = random_hermitian_tuple(4, 2, 99);
    HermitianTuple b = random_hermitian_tuple(4, 2, 99);
    CHECK(tuple_distance(a, b) == doctest::Approx(0.0));

    HermitianTuple longer = random_hermitian_tuple(4, 3, 99);
    CHECK(operator_norm(longer.entries[0] - a.entries[0]) == doctest::Approx(0.0));
    CHECK(operator_norm(longer.entries[1] - a.entries[1]) == doctest::Approx(0.0));

    HermitianTuple other = random_hermitian_tuple(4, 2, 100);
    CHECK(tuple_distance(a, other) > 0.1);

    for (const CMat& e : a.entries) CHECK(is_hermitian(e));
}

TEST_CASE("tuple JSON round trip is exact") {
    HermitianTuple t = random_hermitian_tuple(3, 2, 5);
    std::string text = tuple_to_json(t);
    HermitianTuple back = tuple_from_json(text);
    CHECK(back.n == 3);
    CHECK(back.k() == 2);
    CHECK(tuple_distance(t, back) == doctest::Approx(0.0));

    // Indented output parses to the same tuple.
    HermitianTuple back2 = tuple_from_json(tuple_to_json(t, 2));
    CHECK(tuple_distance(t, back2) == doctest::Approx(0.0));
}

TEST_CASE("field JSON round trip preserves order and values") {
    MatrixField f;
    f.n = 2;
    f.k = 2;
    f.points = {"b", "a"};
    f.values = {random_hermitian_tuple(2, 2, 11), random_hermitian_tuple(2, 2, 12)};

    MatrixField back = field_from_json(field_to_json(f));
    REQUIRE(back.points.size() == 2);
    CHECK(back.points[0] == "b");
    CHECK(back.points[1] == "a");
    CHECK(tuple_distance(back.values[0], f.values[0]) == doctest::Approx(0.0));
    CHECK(tuple_distance(back.values[1], f.values[1]) == doctest::Approx(0.0));
}

TEST_CASE("malformed JSON reports a position") {
    try {
        (void)tuple_from_json("{\"n\": 2,\n  \"k\": 1,\n  \"entries\": [[[1, 2],]]}");
        FAIL("expected MalformedInput");
    } catch (const MalformedInput& e) {
        // The offending comma sits on line 3.
        CHECK(std::string(e.what()).find("3:") != std::string::npos);
    }
    CHECK_THROWS_AS((void)tuple_from_json("not json"), MalformedInput);
    CHECK_THROWS_AS((void)tuple_from_json(""), MalformedInput);
}

TEST_CASE("schema violations are rejected") {
    // Missing keys.
    CHECK_THROWS_AS((void)tuple_from_json("{\"n\": 2, \"k\": 1}"), MalformedInput);
    // k disagrees with the entries array.
    CHECK_THROWS_AS(
        (void)tuple_from_json(
            "{\"n\": 1, \"k\": 2, \"entries\": [[[[1.0, 0.0]]]]}"),
        MalformedInput);
    // Row of the wrong width.
    CHECK_THROWS_AS(
        (void)tuple_from_json(
            "{\"n\": 2, \"k\": 1, \"entries\": [[[[1,0],[0,0]],[[0,0]]]]}"),
        MalformedInput);
    // Cell is not an [re, im] pair.
    CHECK_THROWS_AS(
        (void)tuple_from_json("{\"n\": 1, \"k\": 1, \"entries\": [[[[1.0]]]]}"),
        MalformedInput);
    // Out-of-range size.
    CHECK_THROWS_AS(
        (void)tuple_from_json("{\"n\": 0, \"k\": 1, \"entries\": [[]]}"),
        MalformedInput);

    // Non-Hermitian payload parses structurally but fails the matrix check.
    CHECK_THROWS_AS(
        (void)tuple_from_json("{\"n\": 2, \"k\": 1, \"entries\": "
                              "[[[[0,0],[1,0]],[[0,0],[0,0]]]]}"),
        NonHermitianInput);

    // Non-finite numbers are rejected on write.
    HermitianTuple bad;
    bad.n = 1;
    bad.entries = {CMat::Constant(1, 1, std::nan(""))};
    CHECK_THROWS_AS((void)tuple_to_json(bad), MalformedInput);
}

TEST_CASE("field schema violations are rejected") {
    std::string good =
        "{\"points\": [\"x\"], \"n\": 1, \"k\": 1, \"values\": {\"x\": "
        "{\"n\": 1, \"k\": 1, \"entries\": [[[[1,0]]]]}}}";
    (void)field_from_json(good);  // sanity: the template itself parses

    // Label present in points but missing from values.
    CHECK_THROWS_AS(
        (void)field_from_json("{\"points\": [\"x\", \"y\"], \"n\": 1, \"k\": 1, "
                              "\"values\": {\"x\": {\"n\": 1, \"k\": 1, "
                              "\"entries\": [[[[1,0]]]]}}}"),
        MalformedInput);
    // Extra label in values.
    CHECK_THROWS_AS(
        (void)field_from_json("{\"points\": [\"x\"], \"n\": 1, \"k\": 1, "
                              "\"values\": {\"x\": {\"n\": 1, \"k\": 1, "
                              "\"entries\": [[[[1,0]]]]}, \"y\": {\"n\": 1, "
                              "\"k\": 1, \"entries\": [[[[1,0]]]]}}}"),
        MalformedInput);
    // Duplicate point label.
    CHECK_THROWS_AS(
        (void)field_from_json("{\"points\": [\"x\", \"x\"], \"n\": 1, \"k\": 1, "
                              "\"values\": {\"x\": {\"n\": 1, \"k\": 1, "
                              "\"entries\": [[[[1,0]]]]}}}"),
        MalformedInput);
    // Fiber n disagrees with the field header.
    CHECK_THROWS_AS(
        (void)field_from_json("{\"points\": [\"x\"], \"n\": 2, \"k\": 1, "
                              "\"values\": {\"x\": {\"n\": 1, \"k\": 1, "
                              "\"entries\": [[[[1,0]]]]}}}"),
        MalformedInput);
}
