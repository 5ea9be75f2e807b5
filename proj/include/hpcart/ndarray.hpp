#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace hpcart
{

using CellIndex = std::uint32_t;
using DofIndex = std::uint32_t;

inline constexpr CellIndex NO_CELL = std::numeric_limits<CellIndex>::max();
inline constexpr DofIndex NO_DOF = std::numeric_limits<DofIndex>::max();

using Shape = std::vector<std::size_t>;
using MultiIndex = std::vector<std::size_t>;

inline std::size_t product(std::span<const std::size_t> values)
{
    std::size_t result = 1;
    for(auto v : values) result *= v;
    return result;
}

inline Shape removeEntry(std::span<const std::size_t> s, std::size_t axis)
{
    Shape result(s.begin(), s.end());
    result.erase(result.begin() + static_cast<std::ptrdiff_t>(axis));
    return result;
}

inline MultiIndex insertEntry(std::span<const std::size_t> s, std::size_t axis, std::size_t value)
{
    MultiIndex result(s.begin(), s.end());
    result.insert(result.begin() + static_cast<std::ptrdiff_t>(axis), value);
    return result;
}

inline Shape elementwiseMax(std::span<const std::size_t> a, std::span<const std::size_t> b)
{
    Shape result(a.size());
    for(std::size_t i = 0; i < a.size(); ++i) result[i] = std::max(a[i], b[i]);
    return result;
}

// Invokes f for each multi-index of the given shape in row-major order
// (axis 0 slowest). An empty shape yields exactly one empty index.
template<typename F>
void forEachIndex(std::span<const std::size_t> shape, F&& f)
{
    for(auto s : shape)
        if(s == 0) return;

    MultiIndex index(shape.size(), 0);

    while(true)
    {
        f(std::span<const std::size_t>(index));

        std::size_t axis = shape.size();
        while(axis > 0)
        {
            --axis;
            if(++index[axis] < shape[axis]) break;
            index[axis] = 0;
            if(axis == 0) return;
        }
        if(shape.empty()) return;
    }
}

// Dense d-dimensional array in row-major order (axis 0 slowest). A zero
// extent on any axis denotes an empty array; out-of-shape entries are
// treated as implicit by the callers.
template<typename T>
class NdArray
{
public:
    NdArray() = default;

    explicit NdArray(Shape shape, T value = T{}) :
        shape_(std::move(shape)), data_(product(shape_), value)
    { }

    std::size_t dim() const { return shape_.size(); }
    const Shape& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }

    bool contains(std::span<const std::size_t> index) const
    {
        for(std::size_t a = 0; a < shape_.size(); ++a)
            if(index[a] >= shape_[a]) return false;
        return true;
    }

    std::size_t linearIndex(std::span<const std::size_t> index) const
    {
        std::size_t linear = 0;
        for(std::size_t a = 0; a < shape_.size(); ++a)
            linear = linear * shape_[a] + index[a];
        return linear;
    }

    T& operator[](std::span<const std::size_t> index) { return data_[linearIndex(index)]; }
    const T& operator[](std::span<const std::size_t> index) const { return data_[linearIndex(index)]; }

    T& flat(std::size_t i) { return data_[i]; }
    const T& flat(std::size_t i) const { return data_[i]; }

    // Expands the shape so the given index exists; new slots get fill.
    void grow(std::span<const std::size_t> index, T fill)
    {
        Shape newShape(shape_);
        for(std::size_t a = 0; a < shape_.size(); ++a)
            newShape[a] = std::max(newShape[a], index[a] + 1);

        NdArray<T> result(newShape, fill);
        forEachIndex(shape_, [&](std::span<const std::size_t> i) { result[i] = (*this)[i]; });

        *this = std::move(result);
    }

    bool operator==(const NdArray<T>&) const = default;

private:
    Shape shape_;
    std::vector<T> data_;
};

// Compares the slices (axis, 1) of A0 and (axis, 0) of A1 entry by entry,
// substituting noValue where an index does not exist, and overwrites both
// sides with op's result. Arrays grow only where the result differs from
// the implicit value.
template<typename T, typename Op>
void operateOnInterface(NdArray<T>& A0, NdArray<T>& A1, std::size_t axis, Op op, T noValue)
{
    if(A0.dim() != A1.dim())
        throw std::invalid_argument("operateOnInterface: dimension mismatch");

    auto s0n = removeEntry(A0.shape(), axis);
    auto s1n = removeEntry(A1.shape(), axis);

    forEachIndex(elementwiseMax(s0n, s1n), [&](std::span<const std::size_t> in)
    {
        auto i0 = insertEntry(in, axis, 1);
        auto i1 = insertEntry(in, axis, 0);

        bool e0 = A0.contains(i0);
        bool e1 = A1.contains(i1);

        T v0 = e0 ? A0[i0] : noValue;
        T v1 = e1 ? A1[i1] : noValue;

        T r = op(v0, v1);

        if(v0 != r && !e0) A0.grow(i0, noValue);
        if(v1 != r && !e1) A1.grow(i1, noValue);

        if(v0 != r) A0[i0] = r;
        if(v1 != r) A1[i1] = r;
    });
}

} // namespace hpcart
