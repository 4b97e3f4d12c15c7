#include "rglt/fd_sw.hpp"

#include <cmath>
#include <stdexcept>

namespace rglt {

SWProblem SWProblem::poisson(Domain domain) {
    const int d = domain.dim();
    SWProblem p{std::move(domain),
                std::vector<CoefficientFn>(static_cast<std::size_t>(d),
                                           CoefficientFn::constant(Complex(1.0, 0.0))),
                std::vector<CoefficientFn>(static_cast<std::size_t>(d),
                                           CoefficientFn::constant(Complex(0.0, 0.0))),
                CoefficientFn::constant(Complex(0.0, 0.0)),
                CoefficientFn::constant(Complex(1.0, 0.0))};
    return p;
}

namespace {

constexpr int kSegmentSamples = 64;
constexpr int kBisectionSteps = 40;
constexpr double kDropThreshold = 1e-8;

struct Fraction {
    double s = 1.0;
    bool full_step = false;  // the whole closed unit step stays interior
};

Fraction fraction_impl(const Domain& domain, std::span<const double> x, int axis, double signed_h) {
    std::vector<double> q(x.begin(), x.end());
    auto inside_at = [&](double t) {
        q.assign(x.begin(), x.end());
        q[static_cast<std::size_t>(axis)] += t * signed_h;
        return domain.membership(q) == Region::Inside;
    };

    double last_inside = 0.0, first_outside = -1.0;
    for (int m = 1; m <= kSegmentSamples; ++m) {
        const double t = static_cast<double>(m) / kSegmentSamples;
        if (inside_at(t)) {
            last_inside = t;
        } else {
            first_outside = t;
            break;
        }
    }
    if (first_outside < 0.0) return {1.0, true};

    double s;
    if (domain.has_signed_distance()) {
        double lo = last_inside, hi = first_outside;
        for (int step = 0; step < kBisectionSteps; ++step) {
            const double mid = 0.5 * (lo + hi);
            (inside_at(mid) ? lo : hi) = mid;
        }
        s = 0.5 * (lo + hi);
    } else {
        // sampled verdict: the crossing lies between the bracketing samples
        s = 0.5 * (last_inside + first_outside);
    }
    // the sup can equal 1 with the endpoint itself on the boundary
    if (s > 1.0 - 1e-9) s = 1.0;
    return {s, false};
}

}  // namespace

double neighbor_fraction(const Domain& domain, std::span<const double> x, int axis, int sign,
                         double h) {
    if (domain.membership(x) != Region::Inside)
        throw std::invalid_argument("neighbor_fraction: point not in the open set");
    if (axis < 0 || axis >= domain.dim()) throw std::invalid_argument("neighbor_fraction: bad axis");
    return fraction_impl(domain, x, axis, sign >= 0 ? h : -h).s;
}

SWAssembly assemble_sw(const SWProblem& problem, const GridSize& n) {
    const int d = n.dim();
    if (problem.domain.dim() != d) throw std::invalid_argument("assemble_sw: dimension mismatch");
    if (static_cast<int>(problem.diffusion.size()) != d ||
        static_cast<int>(problem.convection.size()) != d)
        throw std::invalid_argument("assemble_sw: need one diffusion/convection entry per axis");

    GridMask interior = mask(problem.domain, n, /*closure=*/false);
    if (interior.count == 0) throw std::runtime_error("assemble_sw: empty interior grid");

    // fractions per interior point, then drop pathological ones
    const std::int64_t total = n.count();
    std::vector<Fraction> plus(static_cast<std::size_t>(total) * static_cast<std::size_t>(d));
    std::vector<Fraction> minus(static_cast<std::size_t>(total) * static_cast<std::size_t>(d));
    std::vector<std::int64_t> dropped;

    std::vector<double> point(static_cast<std::size_t>(d));
    for (std::int64_t flat = 0; flat < total; ++flat) {
        if (!interior.bits[static_cast<std::size_t>(flat)]) continue;
        const MultiIndex i = delinearize(flat + 1, n);
        for (int r = 0; r < d; ++r)
            point[static_cast<std::size_t>(r)] =
                static_cast<double>(i[r]) / static_cast<double>(n.extent(r) + 1);
        bool pathological = false;
        for (int axis = 0; axis < d; ++axis) {
            const double h = n.step(axis);
            const auto idx = static_cast<std::size_t>(flat) * static_cast<std::size_t>(d) +
                             static_cast<std::size_t>(axis);
            plus[idx] = fraction_impl(problem.domain, point, axis, h);
            minus[idx] = fraction_impl(problem.domain, point, axis, -h);
            pathological = pathological || plus[idx].s < kDropThreshold ||
                           minus[idx].s < kDropThreshold;
        }
        if (pathological) {
            interior.bits[static_cast<std::size_t>(flat)] = 0;
            --interior.count;
            dropped.push_back(flat + 1);
        }
    }
    if (interior.count == 0) throw std::runtime_error("assemble_sw: all interior points dropped");

    Projector projector(interior);
    const auto kept = projector.kept();
    std::vector<std::int64_t> row_of(static_cast<std::size_t>(total), -1);
    for (std::int64_t r = 0; r < projector.reduced_size(); ++r)
        row_of[static_cast<std::size_t>(kept[static_cast<std::size_t>(r)])] = r;

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(projector.reduced_size()) *
                  static_cast<std::size_t>(2 * d + 1));
    Eigen::VectorXd rhs(projector.reduced_size());

    std::vector<double> probe(static_cast<std::size_t>(d));
    for (std::int64_t row = 0; row < projector.reduced_size(); ++row) {
        const std::int64_t flat = kept[static_cast<std::size_t>(row)];
        const MultiIndex i = delinearize(flat + 1, n);
        for (int r = 0; r < d; ++r)
            point[static_cast<std::size_t>(r)] =
                static_cast<double>(i[r]) / static_cast<double>(n.extent(r) + 1);

        double diag = problem.reaction(point).real();
        for (int axis = 0; axis < d; ++axis) {
            const double h = n.step(axis);
            const auto idx = static_cast<std::size_t>(flat) * static_cast<std::size_t>(d) +
                             static_cast<std::size_t>(axis);
            const double sp = plus[idx].s, sm = minus[idx].s;
            const double denom = 0.5 * (sp + sm) * h * h;

            probe.assign(point.begin(), point.end());
            probe[static_cast<std::size_t>(axis)] += 0.5 * sp * h;
            const double a_plus = problem.diffusion[static_cast<std::size_t>(axis)](probe).real();
            probe[static_cast<std::size_t>(axis)] = point[static_cast<std::size_t>(axis)] - 0.5 * sm * h;
            const double a_minus = problem.diffusion[static_cast<std::size_t>(axis)](probe).real();
            diag += a_plus / (sp * denom) + a_minus / (sm * denom);

            const double b_here = problem.convection[static_cast<std::size_t>(axis)](point).real();
            if (plus[idx].full_step) {
                MultiIndex j = i;
                j[axis] += 1;
                const std::int64_t col =
                    j[axis] <= n.extent(axis) ? row_of[static_cast<std::size_t>(linearize(j, n) - 1)]
                                              : -1;
                if (col >= 0)
                    trips.emplace_back(static_cast<int>(row), static_cast<int>(col),
                                       -a_plus / denom + b_here / ((sp + sm) * h));
            }
            if (minus[idx].full_step) {
                MultiIndex j = i;
                j[axis] -= 1;
                const std::int64_t col =
                    j[axis] >= 1 ? row_of[static_cast<std::size_t>(linearize(j, n) - 1)] : -1;
                if (col >= 0)
                    trips.emplace_back(static_cast<int>(row), static_cast<int>(col),
                                       -a_minus / denom - b_here / ((sp + sm) * h));
            }
        }
        trips.emplace_back(static_cast<int>(row), static_cast<int>(row), diag);
        rhs(row) = problem.rhs(point).real();
    }

    Eigen::SparseMatrix<double> matrix(projector.reduced_size(), projector.reduced_size());
    matrix.setFromTriplets(trips.begin(), trips.end());
    return {std::move(matrix), std::move(projector), std::move(rhs), std::move(dropped)};
}

SeparableSymbol sw_symbol(const SWProblem& problem, const MultiIndex& nu) {
    const int d = problem.domain.dim();
    if (nu.dim() != d) throw std::invalid_argument("sw_symbol: nu dimension mismatch");
    std::vector<SymbolTerm> terms;
    for (int axis = 0; axis < d; ++axis) {
        Stencil second_difference(d);
        std::vector<std::int64_t> off(static_cast<std::size_t>(d), 0);
        second_difference.set(off, Complex(2.0, 0.0));
        off[static_cast<std::size_t>(axis)] = 1;
        second_difference.set(off, Complex(-1.0, 0.0));
        off[static_cast<std::size_t>(axis)] = -1;
        second_difference.set(off, Complex(-1.0, 0.0));
        const double scale = static_cast<double>(nu[axis] * nu[axis]);
        terms.push_back({CoefficientFn::scaled(Complex(scale, 0.0),
                                               problem.diffusion[static_cast<std::size_t>(axis)]),
                         second_difference});
    }
    return SeparableSymbol(d, problem.domain, std::move(terms));
}

std::vector<SkewLevel> sw_skew_norm_report(const SWProblem& problem,
                                           const std::vector<GridSize>& sweep) {
    std::vector<SkewLevel> out;
    for (const GridSize& n : sweep) {
        const SWAssembly assembly = assemble_sw(problem, n);
        const double scale = 1.0 / static_cast<double>(n.min_extent() * n.min_extent());
        const Eigen::SparseMatrix<double> scaled = scale * assembly.matrix;
        const Eigen::SparseMatrix<double> skew =
            0.5 * (scaled - Eigen::SparseMatrix<double>(scaled.transpose()));
        SkewLevel level;
        level.n = n;
        level.size = assembly.matrix.rows();
        level.ratio = skew.squaredNorm() / static_cast<double>(level.size);
        out.push_back(level);
    }
    return out;
}

}  // namespace rglt
