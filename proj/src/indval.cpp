#include "mlv/indval.hpp"

#include <algorithm>

namespace mlv {

namespace {

group_value slope(std::pair<int, group_value> const& a, std::pair<int, group_value> const& b)
{
    return (b.second - a.second) / (long)(b.first - a.first);
}

}

newton_polygon lower_hull(std::vector<std::pair<int, group_value>> pts)
{
    std::sort(pts.begin(), pts.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
    newton_polygon np;
    np.points = pts;
    std::vector<std::pair<int, group_value>> h;
    for (auto const& p : pts) {
        while (h.size() >= 2 && !(slope(h[h.size() - 2], h.back()) < slope(h.back(), p))) h.pop_back();
        h.push_back(p);
    }
    for (size_t i = 0; i + 1 < h.size(); ++i) np.sides.push_back({slope(h[i], h[i + 1]), h[i].first, h[i + 1].first});
    return np;
}

std::vector<polygon_side> newton_polygon::steeper_than(group_value const& bound) const
{
    std::vector<polygon_side> r;
    for (auto const& s : sides)
        if (-s.slope > bound) r.push_back(s);
    std::sort(r.begin(), r.end(), [](auto const& a, auto const& b) { return -a.slope < -b.slope; });
    return r;
}

template class inductive_valuation<qpadic_field>;

}
