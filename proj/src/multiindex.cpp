#include "rglt/multiindex.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace rglt {

MultiIndex::MultiIndex(std::vector<std::int64_t> components) : c_(std::move(components)) {
    if (c_.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
}

MultiIndex::MultiIndex(std::initializer_list<std::int64_t> components)
    : MultiIndex(std::vector<std::int64_t>(components)) {}

MultiIndex MultiIndex::uniform(int dim, std::int64_t m) {
    if (dim < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
    return MultiIndex(std::vector<std::int64_t>(static_cast<std::size_t>(dim), m));
}

bool MultiIndex::all_leq(const MultiIndex& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("MultiIndex: dimension mismatch");
    for (int r = 0; r < dim(); ++r)
        if ((*this)[r] > other[r]) return false;
    return true;
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (int r = 0; r < dim(); ++r) os << (r ? "," : "") << c_[static_cast<std::size_t>(r)];
    os << ')';
    return os.str();
}

std::strong_ordering lex_compare(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("lex_compare: dimension mismatch " + a.to_string() + " vs " +
                                    b.to_string());
    for (int r = 0; r < a.dim(); ++r) {
        if (a[r] < b[r]) return std::strong_ordering::less;
        if (a[r] > b[r]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

GridSize::GridSize(MultiIndex extents) : extents_(std::move(extents)) {
    count_ = 1;
    for (int r = 0; r < extents_.dim(); ++r) {
        const std::int64_t m = extents_[r];
        if (m < 1) throw std::invalid_argument("GridSize: extents must be >= 1, got " + extents_.to_string());
        if (count_ > std::numeric_limits<std::int64_t>::max() / m)
            throw std::overflow_error("GridSize: N(n) exceeds 64-bit range for " + extents_.to_string());
        count_ *= m;
    }
}

GridSize::GridSize(std::initializer_list<std::int64_t> extents) : GridSize(MultiIndex(extents)) {}

GridSize GridSize::cubic(int dim, std::int64_t m) { return GridSize(MultiIndex::uniform(dim, m)); }

double GridSize::max_step() const {
    double h = 0.0;
    for (int r = 0; r < dim(); ++r) h = std::max(h, step(r));
    return h;
}

std::int64_t GridSize::min_extent() const {
    std::int64_t m = extents_[0];
    for (int r = 1; r < dim(); ++r) m = std::min(m, extents_[r]);
    return m;
}

std::int64_t linearize(const MultiIndex& h, const GridSize& n) {
    if (h.dim() != n.dim()) throw std::invalid_argument("linearize: dimension mismatch");
    std::int64_t flat = 0;
    for (int r = 0; r < n.dim(); ++r) {
        const std::int64_t hr = h[r];
        if (hr < 1 || hr > n.extent(r))
            throw std::out_of_range("linearize: index " + h.to_string() + " outside 1.." +
                                    n.extents().to_string());
        flat = flat * n.extent(r) + (hr - 1);
    }
    return flat + 1;
}

MultiIndex delinearize(std::int64_t k, const GridSize& n) {
    if (k < 1 || k > n.count())
        throw std::out_of_range("delinearize: flat index " + std::to_string(k) + " outside 1.." +
                                std::to_string(n.count()));
    std::vector<std::int64_t> c(static_cast<std::size_t>(n.dim()));
    std::int64_t rest = k - 1;
    for (int r = n.dim() - 1; r >= 0; --r) {
        c[static_cast<std::size_t>(r)] = rest % n.extent(r) + 1;
        rest /= n.extent(r);
    }
    return MultiIndex(std::move(c));
}

MultiIndexRange::MultiIndexRange(MultiIndex lo, MultiIndex hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.dim() != hi_.dim()) throw std::invalid_argument("iter_range: dimension mismatch");
}

MultiIndexRange::iterator::iterator(const MultiIndexRange* range, bool done)
    : range_(range), done_(done) {
    if (!done_) current_ = range_->lo();
}

MultiIndexRange::iterator& MultiIndexRange::iterator::operator++() {
    for (int r = current_.dim() - 1; r >= 0; --r) {
        if (current_[r] < range_->hi()[r]) {
            ++current_[r];
            for (int s = r + 1; s < current_.dim(); ++s) current_[s] = range_->lo()[s];
            return *this;
        }
    }
    done_ = true;
    return *this;
}

MultiIndexRange::iterator MultiIndexRange::begin() const { return iterator(this, empty()); }

std::int64_t MultiIndexRange::size() const {
    std::int64_t total = 1;
    for (int r = 0; r < lo_.dim(); ++r) {
        const std::int64_t span = hi_[r] - lo_[r] + 1;
        if (span <= 0) return 0;
        total *= span;
    }
    return total;
}

MultiIndexRange iter_range(const MultiIndex& lo, const MultiIndex& hi) {
    return MultiIndexRange(lo, hi);
}

}  // namespace rglt
