#pragma once

#include <string>
#include <vector>

#include "genrank/errors.hpp"

namespace genrank {

// Nonnegative integer extended with infinity; infinity absorbs sums and
// dominates comparisons. Used for ranks and covering dimensions.
struct ExtInt {
    bool infinite = false;
    long value = 0;

    static ExtInt inf() { return ExtInt{true, 0}; }
    static ExtInt of(long v) { return ExtInt{false, v}; }

    bool is_inf() const { return infinite; }

    friend bool operator==(const ExtInt& a, const ExtInt& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    friend bool operator!=(const ExtInt& a, const ExtInt& b) { return !(a == b); }
    friend bool operator<(const ExtInt& a, const ExtInt& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const ExtInt& a, const ExtInt& b) { return a < b || a == b; }
    friend ExtInt operator+(const ExtInt& a, const ExtInt& b) {
        if (a.infinite || b.infinite) return inf();
        return of(a.value + b.value);
    }
};

ExtInt ext_max(const ExtInt& a, const ExtInt& b);
ExtInt ext_min(const ExtInt& a, const ExtInt& b);
// Ceil of a/b for b >= 1; infinity passes through.
ExtInt ext_ceil_div(const ExtInt& a, long b);
std::string to_string(const ExtInt& v);

// Classification of the spectrum for the commutative rank formula: basic
// spaces give 2d, exceptional ones 2d-1, unknown spans both.
enum class SpaceClass { Basic, Exceptional, Unknown };

enum class AlgKind {
    Commutative,     // C(X), dim X = dim_x, class = space_class
    Matrix,          // M_n
    FiniteDim,       // direct sum of M_d, d in dims
    Homogeneous,     // C(X, M_n), fiber size n >= 2, dim X = dim_x
    DirectSum,       // children summed
    Extension,       // children[0] ideal, children[1] quotient
    TensorMn,        // children[0] tensor M_n, with structure flags
    InductiveLimit,  // limit of children[..]; repeats: blocks recur cofinally
    AF,              // approximately finite-dimensional
    UhfAbsorbingRr0, // children[0], UHF-absorbing with real rank zero
    AhSimpleSlowGrowth, // simple AH algebra of slow dimension growth
    Ideal,           // closed two-sided ideal of children[0]
    Quotient,        // quotient of children[0]
};

// Syntactic description of a C*-algebra, the input language of the rank
// calculus. Value-semantic tree.
struct AlgDesc {
    AlgKind kind = AlgKind::AF;
    ExtInt dim_x = ExtInt::of(0);                  // Commutative, Homogeneous
    SpaceClass space_class = SpaceClass::Unknown;  // Commutative
    int n = 0;                                     // Matrix, Homogeneous, TensorMn
    std::vector<int> dims;                         // FiniteDim
    bool rr0 = false;                              // TensorMn flags
    bool sr1 = false;
    bool unital = false;
    bool repeats = false;                          // InductiveLimit
    std::vector<AlgDesc> children;

    friend bool operator==(const AlgDesc&, const AlgDesc&) = default;

    static AlgDesc commutative(ExtInt d, SpaceClass c = SpaceClass::Unknown);
    static AlgDesc matrix(int n);
    static AlgDesc finite_dim(std::vector<int> dims);
    static AlgDesc homogeneous(int n, ExtInt d);
    static AlgDesc direct_sum(std::vector<AlgDesc> parts);
    static AlgDesc extension(AlgDesc ideal, AlgDesc quotient);
    static AlgDesc tensor_mn(AlgDesc child, int n, bool rr0, bool sr1, bool unital);
    static AlgDesc inductive_limit(std::vector<AlgDesc> blocks, bool repeats);
    static AlgDesc af();
    static AlgDesc uhf_absorbing_rr0(AlgDesc child);
    static AlgDesc ah_simple_slow_growth();
    static AlgDesc ideal_of(AlgDesc parent);
    static AlgDesc quotient_of(AlgDesc parent);
};

// One applied rule: which rule fired, the identity it used, the interval
// it produced, and whether that interval leans on the unproven direct-sum
// identity.
struct TraceStep {
    std::string rule;
    std::string anchor;
    ExtInt lo, hi;
    bool conjectural = false;
};

struct RankBounds {
    ExtInt lo, hi;
    bool conjectural = false;
    std::vector<TraceStep> trace;
    bool is_point() const { return lo == hi; }
};

// Interval for the generator rank: least g such that tuples of g+1
// self-adjoint generators are dense. Bounds are always sound; intervals
// marked conjectural would collapse under the direct-sum maximum identity.
RankBounds generator_rank_bounds(const AlgDesc& a);

// Interval for the real rank, clamped from above by the generator rank
// (rank domination: rr <= gr). The clamp appears as a trace step when it
// tightens the bound.
RankBounds real_rank_bounds(const AlgDesc& a);

// Hermitian-to-general generator conversion: g+1 self-adjoint generators
// pack into ceil((g+1)/2) general ones.
ExtInt general_generator_count(ExtInt gr);

// Syntactic certificates used by the sum rules. Sound but incomplete:
// false only means the property could not be certified.
bool is_real_rank_zero(const AlgDesc& a);
bool is_commutative(const AlgDesc& a);

// Rank table for M_n-valued functions on the d-cube.
struct CubeTableRow {
    int d = 0;
    int n = 0;
    long generator_count = 0;  // general generators via dimension growth
    long real_rank = 0;
    long generator_rank = 0;
};

long cube_generator_count(int d, int n);  // ceil((d-1)/n^2) + 1
long cube_real_rank(int d, int n);        // ceil(d/(2n-1))
long cube_generator_rank(int d, int n);   // ceil((d+1)/(2n-2))

// Rows for d = 1..d_max, n = 2..n_max. Throws InvalidSize on empty range.
std::vector<CubeTableRow> cube_table(int d_max, int n_max);
std::string format_cube_table(const std::vector<CubeTableRow>& rows);

}  // namespace genrank
