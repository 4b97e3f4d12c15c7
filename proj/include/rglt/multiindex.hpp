#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace rglt {

/// A d-dimensional integer index (d >= 1). Grid indices are 1-based in every
/// public interface; the flat index set of a grid of size n is {1..N(n)}.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::int64_t> components);
    MultiIndex(std::initializer_list<std::int64_t> components);

    /// Index (m, m, ..., m) with d components.
    static MultiIndex uniform(int dim, std::int64_t m);

    int dim() const { return static_cast<int>(c_.size()); }
    std::int64_t operator[](int axis) const { return c_[static_cast<std::size_t>(axis)]; }
    std::int64_t& operator[](int axis) { return c_[static_cast<std::size_t>(axis)]; }
    const std::vector<std::int64_t>& components() const { return c_; }

    bool operator==(const MultiIndex&) const = default;

    /// Componentwise h <= k; false as soon as one component exceeds.
    bool all_leq(const MultiIndex& other) const;

    std::string to_string() const;

private:
    std::vector<std::int64_t> c_;
};

/// Lexicographic total order, comparing components left to right.
/// Throws std::invalid_argument on dimension mismatch.
std::strong_ordering lex_compare(const MultiIndex& a, const MultiIndex& b);

/// Grid size n with all components >= 1. Carries N(n) = prod n_i
/// (overflow-checked) and the per-axis steps h_i = 1/(n_i + 1).
class GridSize {
public:
    /// The trivial one-point grid; report structs default to it.
    GridSize() : GridSize(MultiIndex{1}) {}
    explicit GridSize(MultiIndex extents);
    GridSize(std::initializer_list<std::int64_t> extents);

    /// Isotropic grid (m, ..., m); the nu = 1 parameterization used in sweeps.
    static GridSize cubic(int dim, std::int64_t m);

    int dim() const { return extents_.dim(); }
    const MultiIndex& extents() const { return extents_; }
    std::int64_t extent(int axis) const { return extents_[axis]; }
    std::int64_t count() const { return count_; }
    double step(int axis) const { return 1.0 / static_cast<double>(extents_[axis] + 1); }
    /// max_i h_i
    double max_step() const;
    std::int64_t min_extent() const;

    bool operator==(const GridSize&) const = default;

private:
    MultiIndex extents_;
    std::int64_t count_ = 0;
};

/// Flat position of h in the lexicographic enumeration of 1..n, in {1..N(n)}.
/// Strictly increasing with respect to lex_compare.
std::int64_t linearize(const MultiIndex& h, const GridSize& n);

/// Inverse of linearize: linearize(delinearize(k, n), n) == k.
MultiIndex delinearize(std::int64_t k, const GridSize& n);

/// Lexicographically ordered range lo..hi (componentwise). Empty when
/// lo <= hi fails on some axis; that is not an error.
class MultiIndexRange {
public:
    MultiIndexRange(MultiIndex lo, MultiIndex hi);

    class iterator {
    public:
        using value_type = MultiIndex;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator() : range_(nullptr), done_(true) {}
        iterator(const MultiIndexRange* range, bool done);

        const MultiIndex& operator*() const { return current_; }
        iterator& operator++();
        bool operator==(const iterator& other) const { return done_ == other.done_; }

    private:
        const MultiIndexRange* range_;
        MultiIndex current_;
        bool done_;
    };

    iterator begin() const;
    iterator end() const { return iterator(this, true); }

    /// Number of indices emitted: prod max(hi_r - lo_r + 1, 0).
    std::int64_t size() const;
    bool empty() const { return size() == 0; }

    const MultiIndex& lo() const { return lo_; }
    const MultiIndex& hi() const { return hi_; }

private:
    MultiIndex lo_, hi_;
};

MultiIndexRange iter_range(const MultiIndex& lo, const MultiIndex& hi);

}  // namespace rglt
