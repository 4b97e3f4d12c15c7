#include "rglt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rglt {

namespace {

double sq(double x) { return x * x; }

double norm2(std::span<const double> p, std::span<const double> c) {
    double s = 0.0;
    for (std::size_t r = 0; r < p.size(); ++r) s += sq(p[r] - c[r]);
    return std::sqrt(s);
}

double ball_volume(int d, double r) {
    // pi^{d/2} r^d / Gamma(d/2 + 1)
    return std::pow(std::numbers::pi, d / 2.0) * std::pow(r, d) / std::tgamma(d / 2.0 + 1.0);
}

// Distance from p to the segment [a, b] in 2D.
double segment_distance(const std::array<double, 2>& p, const std::array<double, 2>& a,
                        const std::array<double, 2>& b) {
    const double vx = b[0] - a[0], vy = b[1] - a[1];
    const double wx = p[0] - a[0], wy = p[1] - a[1];
    const double vv = vx * vx + vy * vy;
    double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(wx - t * vx, wy - t * vy);
}

bool on_segment(const std::array<double, 2>& p, const std::array<double, 2>& a,
                const std::array<double, 2>& b) {
    const double cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
    if (cross != 0.0) return false;
    return p[0] >= std::min(a[0], b[0]) && p[0] <= std::max(a[0], b[0]) &&
           p[1] >= std::min(a[1], b[1]) && p[1] <= std::max(a[1], b[1]);
}

// Even-odd rule with a half-open edge convention; boundary handled separately.
bool polygon_contains(const std::vector<std::array<double, 2>>& v, const std::array<double, 2>& p) {
    bool in = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i][1] > p[1]) != (v[j][1] > p[1])) {
            const double xc = v[j][0] + (v[i][0] - v[j][0]) * (p[1] - v[j][1]) / (v[i][1] - v[j][1]);
            if (p[0] < xc) in = !in;
        }
    }
    return in;
}

double polygon_signed_distance(const std::vector<std::array<double, 2>>& v,
                               const std::array<double, 2>& p) {
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
        dist = std::min(dist, segment_distance(p, v[j], v[i]));
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
        if (on_segment(p, v[j], v[i])) return 0.0;
    return polygon_contains(v, p) ? -dist : dist;
}

double polygon_area(const std::vector<std::array<double, 2>>& v) {
    double a = 0.0;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
        a += v[j][0] * v[i][1] - v[i][0] * v[j][1];
    return std::abs(a) / 2.0;
}

}  // namespace

struct Domain::Impl {
    int dim = 0;
    std::string kind;
    std::function<Region(std::span<const double>)> member;
    std::function<double(std::span<const double>)> sdist;  // may be empty
    std::optional<double> measure;
    bool probe_estimator = false;
};

int Domain::dim() const { return impl_->dim; }
const std::string& Domain::kind() const { return impl_->kind; }

Region Domain::membership(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != impl_->dim)
        throw std::invalid_argument("Domain::membership: point dimension mismatch");
    return impl_->member(p);
}

bool Domain::contains(std::span<const double> p, bool closure) const {
    const Region r = membership(p);
    return r == Region::Inside || (closure && r == Region::Boundary);
}

bool Domain::has_signed_distance() const { return static_cast<bool>(impl_->sdist); }

double Domain::signed_distance(std::span<const double> p) const {
    if (!impl_->sdist)
        throw std::runtime_error("Domain::signed_distance: not available for kind '" +
                                 impl_->kind + "'");
    return impl_->sdist(p);
}

std::optional<double> Domain::analytic_measure() const { return impl_->measure; }

bool Domain::has_probe_estimator() const { return impl_->probe_estimator; }

Domain Domain::with_probe_estimator() const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->probe_estimator = true;
    return Domain(std::move(impl));
}

bool Domain::near_boundary_probe(std::span<const double> p, double c) const {
    if (membership(p) == Region::Boundary) return true;
    const bool here = membership(p) == Region::Inside;
    const int d = impl_->dim;
    std::vector<double> q(p.begin(), p.end());
    auto differs = [&]() {
        const Region r = impl_->member(q);
        return r == Region::Boundary || (r == Region::Inside) != here;
    };
    for (int axis = 0; axis < d; ++axis) {
        for (double sign : {-1.0, 1.0}) {
            q.assign(p.begin(), p.end());
            q[static_cast<std::size_t>(axis)] += sign * c;
            if (differs()) return true;
        }
    }
    const double step = c / std::sqrt(static_cast<double>(d));
    for (std::int64_t corner = 0; corner < (std::int64_t{1} << d); ++corner) {
        q.assign(p.begin(), p.end());
        for (int axis = 0; axis < d; ++axis)
            q[static_cast<std::size_t>(axis)] += ((corner >> axis) & 1) ? step : -step;
        if (differs()) return true;
    }
    return false;
}

namespace {

Region region_from_sdist(double sd) {
    if (sd < 0.0) return Region::Inside;
    if (sd > 0.0) return Region::Outside;
    return Region::Boundary;
}

std::shared_ptr<Domain::Impl> make_sdist_impl(int dim, std::string kind,
                                              std::function<double(std::span<const double>)> sd,
                                              std::optional<double> measure) {
    auto impl = std::make_shared<Domain::Impl>();
    impl->dim = dim;
    impl->kind = std::move(kind);
    impl->sdist = sd;
    impl->member = [sd](std::span<const double> p) { return region_from_sdist(sd(p)); };
    impl->measure = measure;
    return impl;
}

}  // namespace

Domain Domain::hypercube(int dim) {
    if (dim < 1) throw std::invalid_argument("Domain::hypercube: dim must be >= 1");
    auto sd = [dim](std::span<const double> p) {
        // box SDF centered at 1/2 with half-extent 1/2
        double outside = 0.0, inside = -std::numeric_limits<double>::infinity();
        for (int r = 0; r < dim; ++r) {
            const double q = std::abs(p[static_cast<std::size_t>(r)] - 0.5) - 0.5;
            if (q > 0.0) outside += q * q;
            inside = std::max(inside, q);
        }
        return outside > 0.0 ? std::sqrt(outside) : inside;
    };
    return Domain(make_sdist_impl(dim, "hypercube", sd, 1.0));
}

Domain Domain::ball(std::vector<double> center, double radius) {
    if (center.empty() || radius <= 0.0) throw std::invalid_argument("Domain::ball: bad arguments");
    const int dim = static_cast<int>(center.size());
    bool contained = true;
    for (double c : center) contained = contained && c - radius >= 0.0 && c + radius <= 1.0;
    std::optional<double> measure;
    if (contained) measure = ball_volume(dim, radius);
    auto sd = [center = std::move(center), radius](std::span<const double> p) {
        return norm2(p, center) - radius;
    };
    return Domain(make_sdist_impl(dim, "disk", sd, measure));
}

Domain Domain::disk(std::array<double, 2> center, double radius) {
    return ball({center[0], center[1]}, radius);
}

Domain Domain::annulus(std::array<double, 2> center, double inner_radius, double outer_radius) {
    if (!(0.0 < inner_radius && inner_radius < outer_radius))
        throw std::invalid_argument("Domain::annulus: need 0 < inner < outer");
    bool contained = center[0] - outer_radius >= 0.0 && center[0] + outer_radius <= 1.0 &&
                     center[1] - outer_radius >= 0.0 && center[1] + outer_radius <= 1.0;
    std::optional<double> measure;
    if (contained) measure = std::numbers::pi * (sq(outer_radius) - sq(inner_radius));
    std::vector<double> c{center[0], center[1]};
    auto sd = [c, inner_radius, outer_radius](std::span<const double> p) {
        const double r = norm2(p, c);
        return std::max(r - outer_radius, inner_radius - r);
    };
    return Domain(make_sdist_impl(2, "annulus", sd, measure));
}

Domain Domain::polygon(std::vector<std::array<double, 2>> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("Domain::polygon: need >= 3 vertices");
    const double area = polygon_area(vertices);
    auto sd = [v = std::move(vertices)](std::span<const double> p) {
        return polygon_signed_distance(v, {p[0], p[1]});
    };
    return Domain(make_sdist_impl(2, "polygon", sd, area));
}

Domain Domain::triangle(std::array<double, 2> a, std::array<double, 2> b,
                        std::array<double, 2> c) {
    auto impl = polygon({a, b, c}).impl_;
    auto copy = std::make_shared<Impl>(*impl);
    copy->kind = "triangle";
    return Domain(std::move(copy));
}

Domain Domain::l_shape() {
    auto impl = polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}}).impl_;
    auto copy = std::make_shared<Impl>(*impl);
    copy->kind = "l_shape";
    copy->measure = 0.75;
    return Domain(std::move(copy));
}

Domain Domain::implicit(int dim, std::function<bool(std::span<const double>)> predicate) {
    if (dim < 1 || !predicate) throw std::invalid_argument("Domain::implicit: bad arguments");
    auto impl = std::make_shared<Impl>();
    impl->dim = dim;
    impl->kind = "implicit";
    impl->member = [pred = std::move(predicate)](std::span<const double> p) {
        return pred(p) ? Region::Inside : Region::Outside;
    };
    return Domain(std::move(impl));
}

Domain Domain::mapped(const Eigen::MatrixXd& m, const Eigen::VectorXd& shift,
                      const Domain& inner) {
    const int dim = inner.dim();
    if (m.rows() != dim || m.cols() != dim || shift.size() != dim)
        throw std::invalid_argument("Domain::mapped: shape mismatch with inner domain");
    const double det = m.determinant();
    if (std::abs(det) < 1e-300) throw std::invalid_argument("Domain::mapped: singular matrix");
    const Eigen::MatrixXd minv = m.inverse();

    // Similarity iff M^T M = s^2 I; then distances scale by s.
    const Eigen::MatrixXd gram = m.transpose() * m;
    const double s2 = gram(0, 0);
    const bool similarity =
        (gram - s2 * Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() <=
        1e-12 * std::max(1.0, s2);

    auto impl = std::make_shared<Impl>();
    impl->dim = dim;
    impl->kind = "mapped";
    auto pull_back = [minv, shift](std::span<const double> p) {
        Eigen::VectorXd q(p.size());
        for (std::size_t r = 0; r < p.size(); ++r) q[static_cast<Eigen::Index>(r)] = p[r];
        return Eigen::VectorXd(minv * (q - shift));
    };
    impl->member = [pull_back, inner](std::span<const double> p) {
        const Eigen::VectorXd y = pull_back(p);
        return inner.membership(std::span<const double>(y.data(), y.size()));
    };
    if (similarity && inner.has_signed_distance()) {
        const double scale = std::sqrt(s2);
        impl->sdist = [pull_back, inner, scale](std::span<const double> p) {
            const Eigen::VectorXd y = pull_back(p);
            return scale * inner.signed_distance(std::span<const double>(y.data(), y.size()));
        };
    }
    if (inner.analytic_measure()) impl->measure = std::abs(det) * *inner.analytic_measure();
    return Domain(std::move(impl));
}

std::vector<double> grid_point(const MultiIndex& i, const GridSize& n) {
    std::vector<double> p(static_cast<std::size_t>(n.dim()));
    for (int r = 0; r < n.dim(); ++r)
        p[static_cast<std::size_t>(r)] = static_cast<double>(i[r]) / static_cast<double>(n.extent(r) + 1);
    return p;
}

void for_each_grid_point(
    const GridSize& n,
    const std::function<void(const MultiIndex&, std::span<const double>)>& visit) {
    std::vector<double> p(static_cast<std::size_t>(n.dim()));
    for (const MultiIndex& i : iter_range(MultiIndex::uniform(n.dim(), 1), n.extents())) {
        for (int r = 0; r < n.dim(); ++r)
            p[static_cast<std::size_t>(r)] =
                static_cast<double>(i[r]) / static_cast<double>(n.extent(r) + 1);
        visit(i, p);
    }
}

GridMask mask(const Domain& domain, const GridSize& n, bool closure) {
    if (domain.dim() != n.dim()) throw std::invalid_argument("mask: dimension mismatch");
    GridMask m{n, std::vector<std::uint8_t>(static_cast<std::size_t>(n.count()), 0), 0};
    std::int64_t flat = 0;
    for_each_grid_point(n, [&](const MultiIndex&, std::span<const double> p) {
        if (domain.contains(p, closure)) {
            m.bits[static_cast<std::size_t>(flat)] = 1;
            ++m.count;
        }
        ++flat;
    });
    return m;
}

std::int64_t boundary_band_count(const Domain& domain, const GridSize& n, double c) {
    if (c < 0.0) throw std::invalid_argument("boundary_band_count: c must be >= 0");
    const bool exact = domain.has_signed_distance();
    if (!exact && !domain.has_probe_estimator())
        throw std::runtime_error("boundary_band_count: domain kind '" + domain.kind() +
                                 "' has no signed distance and no sampled estimator; enable "
                                 "with_probe_estimator()");
    std::int64_t count = 0;
    for_each_grid_point(n, [&](const MultiIndex&, std::span<const double> p) {
        if (exact ? std::abs(domain.signed_distance(p)) <= c : domain.near_boundary_probe(p, c))
            ++count;
    });
    return count;
}

std::vector<MultiIndex> near_boundary_points(const Domain& domain, const GridSize& n, int k) {
    if (k < 1) throw std::invalid_argument("near_boundary_points: k must be >= 1");
    constexpr int kSamples = 64;
    std::vector<MultiIndex> result;
    std::vector<double> q(static_cast<std::size_t>(n.dim()));
    for_each_grid_point(n, [&](const MultiIndex& i, std::span<const double> p) {
        if (domain.membership(p) != Region::Inside) return;
        for (int axis = 0; axis < n.dim(); ++axis) {
            const double radius = static_cast<double>(k) * n.step(axis);
            bool exits = false;
            for (int m = 0; m < kSamples && !exits; ++m) {
                // midpoint samples keep the open endpoints excluded
                const double t = -radius + 2.0 * radius * (m + 0.5) / kSamples;
                q.assign(p.begin(), p.end());
                q[static_cast<std::size_t>(axis)] += t;
                exits = domain.membership(q) != Region::Inside;
            }
            if (exits) {
                result.push_back(i);
                return;
            }
        }
    });
    return result;
}

double measure_estimate(const Domain& domain, const GridSize& n) {
    return static_cast<double>(mask(domain, n, true).count) / static_cast<double>(n.count());
}

}  // namespace rglt
