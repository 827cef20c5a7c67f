#include "baen/metrics.hpp"

#include <stdexcept>

namespace baen {

Scores metrics(const Vector& y_true, const Vector& y_pred)
{
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("metrics: length mismatch");
    if (y_true.size() == 0)
        throw std::invalid_argument("metrics: empty input");
    Scores s;
    ConfusionCounts& c = s.counts;
    for (Eigen::Index i = 0; i < y_true.size(); ++i) {
        const bool truth = y_true[i] > 0;
        const bool guess = y_pred[i] > 0;
        if (truth && guess)
            ++c.tp;
        else if (!truth && !guess)
            ++c.tn;
        else if (guess)
            ++c.fp;
        else
            ++c.fn;
    }
    s.acc = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    const long denom = 2 * c.tp + c.fp + c.fn;
    s.f1 = denom > 0 ? 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom) : 0.0;
    return s;
}

} // namespace baen
