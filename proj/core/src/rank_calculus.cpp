#include "genrank/rank_calculus.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <utility>

namespace genrank {

ExtInt ext_max(const ExtInt& a, const ExtInt& b) {
    if (a.infinite || b.infinite) return ExtInt::inf();
    return ExtInt::of(std::max(a.value, b.value));
}

ExtInt ext_min(const ExtInt& a, const ExtInt& b) {
    if (a.infinite) return b;
    if (b.infinite) return a;
    return ExtInt::of(std::min(a.value, b.value));
}

ExtInt ext_ceil_div(const ExtInt& a, long b) {
    if (b < 1) throw InvalidSize("ext_ceil_div: divisor must be >= 1");
    if (a.infinite) return ExtInt::inf();
    return ExtInt::of((a.value + b - 1) / b);
}

std::string to_string(const ExtInt& v) {
    return v.infinite ? std::string("inf") : std::to_string(v.value);
}

AlgDesc AlgDesc::commutative(ExtInt d, SpaceClass c) {
    AlgDesc a;
    a.kind = AlgKind::Commutative;
    a.dim_x = d;
    a.space_class = c;
    return a;
}

AlgDesc AlgDesc::matrix(int n) {
    AlgDesc a;
    a.kind = AlgKind::Matrix;
    a.n = n;
    return a;
}

AlgDesc AlgDesc::finite_dim(std::vector<int> dims) {
    AlgDesc a;
    a.kind = AlgKind::FiniteDim;
    a.dims = std::move(dims);
    return a;
}

AlgDesc AlgDesc::homogeneous(int n, ExtInt d) {
    AlgDesc a;
    a.kind = AlgKind::Homogeneous;
    a.n = n;
    a.dim_x = d;
    return a;
}

AlgDesc AlgDesc::direct_sum(std::vector<AlgDesc> parts) {
    AlgDesc a;
    a.kind = AlgKind::DirectSum;
    a.children = std::move(parts);
    return a;
}

AlgDesc AlgDesc::extension(AlgDesc ideal, AlgDesc quotient) {
    AlgDesc a;
    a.kind = AlgKind::Extension;
    a.children.push_back(std::move(ideal));
    a.children.push_back(std::move(quotient));
    return a;
}

AlgDesc AlgDesc::tensor_mn(AlgDesc child, int n, bool rr0, bool sr1, bool unital) {
    AlgDesc a;
    a.kind = AlgKind::TensorMn;
    a.children.push_back(std::move(child));
    a.n = n;
    a.rr0 = rr0;
    a.sr1 = sr1;
    a.unital = unital;
    return a;
}

AlgDesc AlgDesc::inductive_limit(std::vector<AlgDesc> blocks, bool repeats) {
    AlgDesc a;
    a.kind = AlgKind::InductiveLimit;
    a.children = std::move(blocks);
    a.repeats = repeats;
    return a;
}

AlgDesc AlgDesc::af() {
    AlgDesc a;
    a.kind = AlgKind::AF;
    return a;
}

AlgDesc AlgDesc::uhf_absorbing_rr0(AlgDesc child) {
    AlgDesc a;
    a.kind = AlgKind::UhfAbsorbingRr0;
    a.children.push_back(std::move(child));
    return a;
}

AlgDesc AlgDesc::ah_simple_slow_growth() {
    AlgDesc a;
    a.kind = AlgKind::AhSimpleSlowGrowth;
    return a;
}

AlgDesc AlgDesc::ideal_of(AlgDesc parent) {
    AlgDesc a;
    a.kind = AlgKind::Ideal;
    a.children.push_back(std::move(parent));
    return a;
}

AlgDesc AlgDesc::quotient_of(AlgDesc parent) {
    AlgDesc a;
    a.kind = AlgKind::Quotient;
    a.children.push_back(std::move(parent));
    return a;
}

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw InvalidSize(msg);
}

void validate_node(const AlgDesc& a) {
    switch (a.kind) {
        case AlgKind::Commutative:
            require(a.dim_x.infinite || a.dim_x.value >= 0,
                    "commutative: dimension must be >= 0");
            break;
        case AlgKind::Matrix:
            require(a.n >= 1, "matrix: n must be >= 1");
            break;
        case AlgKind::FiniteDim:
            require(!a.dims.empty(), "finite_dim: needs at least one block");
            for (int d : a.dims) require(d >= 1, "finite_dim: blocks must be >= 1");
            break;
        case AlgKind::Homogeneous:
            require(a.n >= 2, "homogeneous: fiber size must be >= 2");
            require(a.dim_x.infinite || a.dim_x.value >= 0,
                    "homogeneous: dimension must be >= 0");
            break;
        case AlgKind::DirectSum:
            require(!a.children.empty(), "direct sum: needs at least one summand");
            break;
        case AlgKind::Extension:
            require(a.children.size() == 2, "extension: needs ideal and quotient");
            break;
        case AlgKind::TensorMn:
            require(a.children.size() == 1 && a.n >= 2,
                    "tensor_mn: needs one child and n >= 2");
            break;
        case AlgKind::InductiveLimit:
            require(!a.children.empty(), "inductive limit: needs at least one block");
            break;
        case AlgKind::UhfAbsorbingRr0:
        case AlgKind::Ideal:
        case AlgKind::Quotient:
            require(a.children.size() == 1, "wrapper node: needs exactly one child");
            break;
        case AlgKind::AF:
        case AlgKind::AhSimpleSlowGrowth:
            break;
    }
}

bool is_homogeneous_sum(const AlgDesc& a) {
    switch (a.kind) {
        case AlgKind::Homogeneous:
        case AlgKind::Matrix:
        case AlgKind::FiniteDim:
        case AlgKind::Commutative:
            return true;
        case AlgKind::DirectSum:
            return std::all_of(a.children.begin(), a.children.end(), is_homogeneous_sum);
        default:
            return false;
    }
}

RankBounds make_step(RankBounds b, const std::string& rule, const std::string& anchor) {
    b.trace.push_back(TraceStep{rule, anchor, b.lo, b.hi, b.conjectural});
    return b;
}

void absorb_trace(RankBounds& into, const RankBounds& child) {
    into.trace.insert(into.trace.end(), child.trace.begin(), child.trace.end());
    into.conjectural = into.conjectural || child.conjectural;
}

RankBounds eval_gr(const AlgDesc& a);

RankBounds gr_commutative(const AlgDesc& a) {
    RankBounds b;
    ExtInt d = a.dim_x;
    std::string anchor;
    if (d == ExtInt::of(0)) {
        b.lo = b.hi = ExtInt::of(0);
        anchor = "a zero-dimensional spectrum admits a single injective generator";
    } else if (d == ExtInt::of(1)) {
        b.lo = b.hi = ExtInt::of(2);
        anchor = "gr C(X) = 2 for one-dimensional X";
    } else if (a.space_class == SpaceClass::Basic) {
        b.lo = b.hi = d + d;
        anchor = "gr C(X) = 2 dim X on basic spectra";
    } else if (a.space_class == SpaceClass::Exceptional) {
        ExtInt v = d.infinite ? ExtInt::inf() : ExtInt::of(2 * d.value - 1);
        b.lo = b.hi = v;
        anchor = "gr C(X) = 2 dim X - 1 on exceptional spectra";
    } else {
        b.lo = d.infinite ? ExtInt::inf() : ExtInt::of(2 * d.value - 1);
        b.hi = d + d;
        anchor = "2 dim X - 1 <= gr C(X) <= 2 dim X";
    }
    return make_step(std::move(b), "commutative", anchor);
}

RankBounds gr_direct_sum(const AlgDesc& a) {
    RankBounds b;
    std::vector<RankBounds> parts;
    for (const auto& c : a.children) parts.push_back(eval_gr(c));
    for (const auto& p : parts) absorb_trace(b, p);
    b.lo = ExtInt::of(0);
    for (const auto& p : parts) b.lo = ext_max(b.lo, p.lo);

    bool all_homog = std::all_of(a.children.begin(), a.children.end(), is_homogeneous_sum);
    bool all_rr0 = std::all_of(a.children.begin(), a.children.end(),
                               [](const AlgDesc& c) { return is_real_rank_zero(c); });
    if (parts.size() == 1 || all_homog || all_rr0) {
        b.hi = ExtInt::of(0);
        for (const auto& p : parts) b.hi = ext_max(b.hi, p.hi);
        const char* anchor =
            parts.size() == 1 ? "a single summand is the algebra itself"
            : all_homog       ? "gr(A + B) = max(gr A, gr B) for sums of homogeneous algebras"
                              : "gr(A + B) = max(gr A, gr B) under real rank zero";
        return make_step(std::move(b), "direct-sum-max", anchor);
    }
    b.hi = ExtInt::of(static_cast<long>(parts.size()) - 1);
    for (const auto& p : parts) b.hi = b.hi + p.hi;
    b.conjectural = true;
    return make_step(std::move(b), "direct-sum-splice",
                     "iterated extension bound gr <= sum gr_i + (s - 1); expected to "
                     "collapse to the maximum");
}

RankBounds gr_extension(const AlgDesc& a) {
    RankBounds b;
    RankBounds j = eval_gr(a.children[0]);
    RankBounds q = eval_gr(a.children[1]);
    absorb_trace(b, j);
    absorb_trace(b, q);
    b.lo = ext_max(j.lo, q.lo);
    b.hi = j.hi + q.hi + ExtInt::of(1);
    return make_step(std::move(b), "extension",
                     "gr(E) <= gr(J) + gr(E/J) + 1; both J and E/J bound gr(E) below");
}

RankBounds gr_tensor_mn(const AlgDesc& a) {
    RankBounds b;
    RankBounds c = eval_gr(a.children[0]);
    absorb_trace(b, c);
    long nsq = static_cast<long>(a.n) * a.n;
    if (c.hi == ExtInt::of(0)) {
        b.lo = b.hi = ExtInt::of(1);
        return make_step(std::move(b), "tensor-matrix",
                         "a gr-0 factor makes the tensor a matrix bundle over a "
                         "low-dimensional spectrum: gr = 1");
    }
    if (a.unital) {
        ExtInt t = ext_ceil_div(c.lo + ExtInt::of(1), nsq);
        if (!t.infinite) t.value -= 1;
        b.lo = ext_max(ExtInt::of(1), t);
    } else {
        b.lo = ExtInt::of(1);
    }
    if (a.rr0 && a.sr1 && a.unital && ExtInt::of(1) <= c.lo) {
        b.hi = ext_ceil_div(c.hi, nsq);
        return make_step(std::move(b), "tensor-matrix",
                         "matrix absorption under real rank zero and stable rank one "
                         "divides the generator count by n^2");
    }
    b.hi = ExtInt::inf();
    return make_step(std::move(b), "tensor-matrix",
                     "no absorption certificate; only the noncommutativity lower "
                     "bound survives");
}

RankBounds gr_limit(const AlgDesc& a) {
    RankBounds b;
    std::vector<RankBounds> parts;
    for (const auto& c : a.children) parts.push_back(eval_gr(c));
    for (const auto& p : parts) absorb_trace(b, p);
    b.lo = ExtInt::of(0);
    if (a.repeats) {
        b.hi = ExtInt::inf();
        for (const auto& p : parts) b.hi = ext_min(b.hi, p.hi);
        return make_step(std::move(b), "inductive-limit",
                         "every listed block recurs cofinally, so each block bound "
                         "passes to the limit");
    }
    b.hi = parts.back().hi;
    return make_step(std::move(b), "inductive-limit",
                     "the tail of the system bounds the limit from above");
}

RankBounds eval_gr(const AlgDesc& a) {
    validate_node(a);
    RankBounds b;
    switch (a.kind) {
        case AlgKind::Commutative:
            return gr_commutative(a);
        case AlgKind::Matrix:
            if (a.n == 1) {
                b.lo = b.hi = ExtInt::of(0);
                return make_step(std::move(b), "matrix", "M_1 is singly generated");
            }
            b.lo = b.hi = ExtInt::of(1);
            return make_step(std::move(b), "matrix", "a canonical pair generates M_n");
        case AlgKind::FiniteDim: {
            bool all_one = std::all_of(a.dims.begin(), a.dims.end(),
                                       [](int d) { return d == 1; });
            b.lo = b.hi = ExtInt::of(all_one ? 0 : 1);
            return make_step(std::move(b), "finite-dimensional",
                             all_one ? "a diagonal with distinct entries generates"
                                     : "a pair generates every finite-dimensional algebra");
        }
        case AlgKind::Homogeneous:
            b.lo = b.hi = ext_ceil_div(a.dim_x + ExtInt::of(1), 2L * a.n - 2);
            return make_step(std::move(b), "homogeneous",
                             "gr C(X, M_n) = ceil((dim X + 1) / (2n - 2))");
        case AlgKind::DirectSum:
            return gr_direct_sum(a);
        case AlgKind::Extension:
            return gr_extension(a);
        case AlgKind::TensorMn:
            return gr_tensor_mn(a);
        case AlgKind::InductiveLimit:
            return gr_limit(a);
        case AlgKind::AF:
            b.lo = ExtInt::of(0);
            b.hi = ExtInt::of(1);
            return make_step(std::move(b), "af",
                             "approximately finite-dimensional algebras satisfy gr <= 1");
        case AlgKind::UhfAbsorbingRr0:
            b.lo = ExtInt::of(0);
            b.hi = ExtInt::of(1);
            return make_step(std::move(b), "uhf-absorbing",
                             "UHF-absorbing real-rank-zero algebras satisfy gr <= 1");
        case AlgKind::AhSimpleSlowGrowth:
            b.lo = ExtInt::of(0);
            b.hi = ExtInt::of(1);
            return make_step(std::move(b), "ah-slow-growth",
                             "simple AH algebras of slow dimension growth satisfy gr <= 1");
        case AlgKind::Ideal: {
            RankBounds p = eval_gr(a.children[0]);
            absorb_trace(b, p);
            b.lo = ExtInt::of(0);
            b.hi = p.hi;
            return make_step(std::move(b), "ideal",
                             "an ideal inherits the upper bound of the ambient algebra");
        }
        case AlgKind::Quotient: {
            RankBounds p = eval_gr(a.children[0]);
            absorb_trace(b, p);
            b.lo = ExtInt::of(0);
            b.hi = p.hi;
            return make_step(std::move(b), "quotient",
                             "images of generators generate the quotient");
        }
    }
    throw InvalidSize("generator_rank_bounds: unknown description node");
}

RankBounds eval_rr(const AlgDesc& a);

RankBounds rr_direct_sum(const AlgDesc& a) {
    RankBounds b;
    b.lo = ExtInt::of(0);
    b.hi = ExtInt::of(0);
    for (const auto& c : a.children) {
        RankBounds p = eval_rr(c);
        absorb_trace(b, p);
        b.lo = ext_max(b.lo, p.lo);
        b.hi = ext_max(b.hi, p.hi);
    }
    return make_step(std::move(b), "direct-sum-max", "rr(A + B) = max(rr A, rr B)");
}

RankBounds eval_rr(const AlgDesc& a) {
    validate_node(a);
    RankBounds b;
    switch (a.kind) {
        case AlgKind::Commutative:
            b.lo = b.hi = a.dim_x;
            return make_step(std::move(b), "commutative", "rr C(X) = dim X");
        case AlgKind::Matrix:
        case AlgKind::FiniteDim:
            b.lo = b.hi = ExtInt::of(0);
            return make_step(std::move(b), "finite-dimensional",
                             "finite-dimensional algebras have real rank zero");
        case AlgKind::Homogeneous:
            b.lo = b.hi = ext_ceil_div(a.dim_x, 2L * a.n - 1);
            return make_step(std::move(b), "homogeneous",
                             "rr C(X, M_n) = ceil(dim X / (2n - 1))");
        case AlgKind::DirectSum:
            return rr_direct_sum(a);
        case AlgKind::Extension: {
            RankBounds j = eval_rr(a.children[0]);
            RankBounds q = eval_rr(a.children[1]);
            absorb_trace(b, j);
            absorb_trace(b, q);
            b.lo = ext_max(j.lo, q.lo);
            b.hi = ExtInt::inf();
            return make_step(std::move(b), "extension",
                             "ideal and quotient are hereditary lower bounds");
        }
        case AlgKind::TensorMn:
            if (a.rr0) {
                b.lo = b.hi = ExtInt::of(0);
                return make_step(std::move(b), "tensor-matrix",
                                 "real rank zero is matrix stable");
            }
            b.lo = ExtInt::of(0);
            b.hi = ExtInt::inf();
            return make_step(std::move(b), "tensor-matrix",
                             "no real-rank certificate for the factor");
        case AlgKind::InductiveLimit: {
            std::vector<RankBounds> parts;
            for (const auto& c : a.children) parts.push_back(eval_rr(c));
            for (const auto& p : parts) absorb_trace(b, p);
            b.lo = ExtInt::of(0);
            if (a.repeats) {
                b.hi = ExtInt::inf();
                for (const auto& p : parts) b.hi = ext_min(b.hi, p.hi);
            } else {
                b.hi = parts.back().hi;
            }
            return make_step(std::move(b), "inductive-limit",
                             "real rank does not increase along cofinal blocks");
        }
        case AlgKind::AF:
        case AlgKind::UhfAbsorbingRr0:
            b.lo = b.hi = ExtInt::of(0);
            return make_step(std::move(b), a.kind == AlgKind::AF ? "af" : "uhf-absorbing",
                             "real rank zero by construction");
        case AlgKind::AhSimpleSlowGrowth:
            b.lo = ExtInt::of(0);
            b.hi = ExtInt::inf();
            return make_step(std::move(b), "ah-slow-growth",
                             "no direct real-rank certificate; rank domination applies");
        case AlgKind::Ideal:
        case AlgKind::Quotient: {
            RankBounds p = eval_rr(a.children[0]);
            absorb_trace(b, p);
            b.lo = ExtInt::of(0);
            b.hi = p.hi;
            return make_step(std::move(b),
                             a.kind == AlgKind::Ideal ? "ideal" : "quotient",
                             "real rank is hereditary for ideals and quotients");
        }
    }
    throw InvalidSize("real_rank_bounds: unknown description node");
}

}  // namespace

RankBounds generator_rank_bounds(const AlgDesc& a) { return eval_gr(a); }

RankBounds real_rank_bounds(const AlgDesc& a) {
    RankBounds r = eval_rr(a);
    RankBounds g = eval_gr(a);
    if (g.hi < r.hi) {
        if (g.hi < r.lo)
            throw FormulaMismatch("real_rank_bounds: rank domination undercut the lower bound");
        r.hi = g.hi;
        r.conjectural = r.conjectural || g.conjectural;
        r.trace.push_back(TraceStep{"rank-domination", "rr <= gr", r.lo, r.hi,
                                    r.conjectural});
    }
    return r;
}

ExtInt general_generator_count(ExtInt gr) {
    if (gr.infinite) return ExtInt::inf();
    if (gr.value < 0) throw InvalidSize("general_generator_count: rank must be >= 0");
    return ExtInt::of((gr.value + 2) / 2);
}

bool is_real_rank_zero(const AlgDesc& a) {
    switch (a.kind) {
        case AlgKind::Matrix:
        case AlgKind::FiniteDim:
        case AlgKind::AF:
        case AlgKind::UhfAbsorbingRr0:
            return true;
        case AlgKind::Commutative:
        case AlgKind::Homogeneous:
            return a.dim_x == ExtInt::of(0);
        case AlgKind::TensorMn:
            return a.rr0;
        case AlgKind::DirectSum:
        case AlgKind::InductiveLimit:
            return std::all_of(a.children.begin(), a.children.end(),
                               [](const AlgDesc& c) { return is_real_rank_zero(c); });
        case AlgKind::Ideal:
        case AlgKind::Quotient:
            return is_real_rank_zero(a.children[0]);
        case AlgKind::Extension:
        case AlgKind::AhSimpleSlowGrowth:
            return false;
    }
    return false;
}

bool is_commutative(const AlgDesc& a) {
    switch (a.kind) {
        case AlgKind::Commutative:
            return true;
        case AlgKind::Matrix:
            return a.n == 1;
        case AlgKind::FiniteDim:
            return std::all_of(a.dims.begin(), a.dims.end(), [](int d) { return d == 1; });
        case AlgKind::DirectSum:
        case AlgKind::InductiveLimit:
            return std::all_of(a.children.begin(), a.children.end(),
                               [](const AlgDesc& c) { return is_commutative(c); });
        case AlgKind::Ideal:
        case AlgKind::Quotient:
            return is_commutative(a.children[0]);
        default:
            return false;
    }
}

long cube_generator_count(int d, int n) {
    if (d < 1 || n < 2) throw InvalidSize("cube_generator_count: need d >= 1 and n >= 2");
    long nsq = static_cast<long>(n) * n;
    return (d - 1 + nsq - 1) / nsq + 1;
}

long cube_real_rank(int d, int n) {
    if (d < 1 || n < 2) throw InvalidSize("cube_real_rank: need d >= 1 and n >= 2");
    long q = 2L * n - 1;
    return (d + q - 1) / q;
}

long cube_generator_rank(int d, int n) {
    if (d < 1 || n < 2) throw InvalidSize("cube_generator_rank: need d >= 1 and n >= 2");
    long q = 2L * n - 2;
    return (d + 1 + q - 1) / q;
}

std::vector<CubeTableRow> cube_table(int d_max, int n_max) {
    if (d_max < 1 || n_max < 2) throw InvalidSize("cube_table: need d_max >= 1 and n_max >= 2");
    std::vector<CubeTableRow> rows;
    for (int d = 1; d <= d_max; ++d)
        for (int n = 2; n <= n_max; ++n)
            rows.push_back(CubeTableRow{d, n, cube_generator_count(d, n),
                                        cube_real_rank(d, n), cube_generator_rank(d, n)});
    return rows;
}

std::string format_cube_table(const std::vector<CubeTableRow>& rows) {
    std::ostringstream os;
    os << std::setw(4) << "d" << std::setw(4) << "n" << std::setw(12) << "generators"
       << std::setw(11) << "real-rank" << std::setw(16) << "generator-rank" << '\n';
    for (const auto& r : rows)
        os << std::setw(4) << r.d << std::setw(4) << r.n << std::setw(12)
           << r.generator_count << std::setw(11) << r.real_rank << std::setw(16)
           << r.generator_rank << '\n';
    return os.str();
}

}  // namespace genrank
