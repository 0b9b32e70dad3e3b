#include "sawkit/numerics/dft.hpp"

#include "sawkit/error.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace sawkit::numerics
{

namespace
{

using cplx = std::complex<double>;

// exp(sign * 2 pi i * num / den), with the angle reduced exactly first.
cplx unit_root(std::size_t num, std::size_t den, int sign)
{
    num %= den;
    const double angle = sign * 2 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

// Unnormalized in-place radix-2 transform with exponent sign `sign`.
void radix2(std::vector<cplx>& a, int sign)
{
    const std::size_t n = a.size();
    for(std::size_t i = 1, j = 0; i < n; ++i)
    {
        std::size_t bit = n >> 1;
        for(; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if(i < j)
            std::swap(a[i], a[j]);
    }

    std::vector<cplx> twiddle(n / 2);
    for(std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = unit_root(k, n, sign);

    for(std::size_t len = 2; len <= n; len <<= 1)
    {
        const std::size_t stride = n / len;
        for(std::size_t i = 0; i < n; i += len)
        {
            for(std::size_t k = 0; k < len / 2; ++k)
            {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * twiddle[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Unnormalized arbitrary-length transform via the chirp-z identity
// kn = (k^2 + n^2 - (k-n)^2) / 2.
std::vector<cplx> bluestein(std::span<const cplx> x, int sign)
{
    const std::size_t n = x.size();
    const std::size_t m = std::bit_ceil(2 * n - 1);

    std::vector<cplx> chirp(n);
    for(std::size_t k = 0; k < n; ++k)
        chirp[k] = unit_root((k * k) % (2 * n), 2 * n, sign);

    std::vector<cplx> a(m), b(m);
    for(std::size_t k = 0; k < n; ++k)
        a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for(std::size_t k = 1; k < n; ++k)
        b[k] = b[m - k] = std::conj(chirp[k]);

    radix2(a, -1);
    radix2(b, -1);
    for(std::size_t k = 0; k < m; ++k)
        a[k] *= b[k];
    radix2(a, +1);

    std::vector<cplx> out(n);
    const double inv_m = 1.0 / static_cast<double>(m);
    for(std::size_t k = 0; k < n; ++k)
        out[k] = a[k] * inv_m * chirp[k];
    return out;
}

} // namespace

std::vector<cplx> dft(std::span<const cplx> input, Direction direction)
{
    const std::size_t n = input.size();
    if(n < 2)
        throw ArgumentError("dft needs at least two samples");

    const int sign = direction == Direction::forward ? -1 : +1;
    std::vector<cplx> out;
    if(std::has_single_bit(n))
    {
        out.assign(input.begin(), input.end());
        radix2(out, sign);
    }
    else
    {
        out = bluestein(input, sign);
    }

    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for(auto& v : out)
        v *= norm;
    return out;
}

} // namespace sawkit::numerics
