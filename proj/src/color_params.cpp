#include "caperc/color_params.hpp"

#include <algorithm>
#include <numeric>

namespace caperc {

ColorParams ColorParams::make(std::vector<double> lams) {
    if (lams.size() < 2) throw std::invalid_argument("ColorParams: need k >= 2 colors");
    for (double l : lams)
        if (!(l > 0.0)) throw std::invalid_argument("ColorParams: every lambda must be > 0");
    std::sort(lams.begin(), lams.end(), std::greater<>());
    ColorParams p;
    p.k = static_cast<int>(lams.size());
    p.lambdas = std::move(lams);
    p.Lambda = std::accumulate(p.lambdas.begin(), p.lambdas.end(), 0.0);
    p.lambda_star.reserve(p.lambdas.size());
    for (double l : p.lambdas) p.lambda_star.push_back(p.Lambda - l);
    return p;
}

}  // namespace caperc
