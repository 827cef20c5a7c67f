#pragma once

#include "baen/kernel.hpp"

namespace baen {

struct ConfusionCounts {
    long tp = 0;
    long tn = 0;
    long fp = 0;
    long fn = 0;

    long total() const { return tp + tn + fp + fn; }
};

struct Scores {
    ConfusionCounts counts;
    double acc = 0.0;
    double f1 = 0.0;
};

/// Accuracy and F1 with +1 as the positive class; F1 is 0 when 2tp+fp+fn = 0.
Scores metrics(const Vector& y_true, const Vector& y_pred);

} // namespace baen
