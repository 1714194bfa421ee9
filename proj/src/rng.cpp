#include "metasir/rng.hpp"

#include <cmath>

namespace metasir {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace

std::uint64_t
mix64(std::uint64_t x)
{
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t
stream_seed(std::uint64_t master_seed, std::uint64_t index, std::uint64_t attempt)
{
    std::uint64_t h = mix64(master_seed + kGolden);
    h = mix64(h ^ (index + 0x632be59bd9b4e019ULL));
    return mix64(h ^ (attempt * kGolden + 0x8cb92ba72f3d8dd7ULL));
}

StreamRng::result_type
StreamRng::operator()()
{
    state_ += kGolden;
    return mix64(state_);
}

double
StreamRng::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double
StreamRng::exponential()
{
    return -std::log(uniform_open_low());
}

} // namespace metasir
