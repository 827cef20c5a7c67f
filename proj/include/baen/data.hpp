#pragma once

#include "baen/kernel.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace baen {

/// Raised for unreadable, malformed or unusable input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Dataset {
    Matrix X;
    Vector y;  // -1 / +1
    std::string name;
    std::vector<std::string> feature_names;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index features() const { return X.cols(); }
    /// Throws DataError unless shapes agree, n >= 2, labels are +-1 and all values finite.
    void validate() const;
    Dataset subset(const std::vector<int>& rows) const;
};

/// Comma-separated file; a first row with any non-numeric cell is a header.
/// `label_column` is a header name, a 0-based index, or empty for the last
/// column. Labels may be {-1, +1} or {0, 1} with 0 mapped to -1.
Dataset load_csv(const std::string& path, const std::string& label_column = "");

/// Every column is a feature; same dialect as load_csv.
Matrix load_csv_features(const std::string& path);

/// Writes a header row (feature names, then "label") and 17-digit values.
void save_csv(const std::string& path, const Dataset& ds);

struct GaussianPair {
    Vector mu_plus = Vector::Constant(2, 3.0);
    Vector mu_minus = Vector::Constant(2, -3.0);
};

/// n_per_class i.i.d. draws from N(mu+, I) labelled +1 followed by the same
/// number from N(mu-, I) labelled -1.
Dataset make_gaussian_twoclass(int n_per_class, const Vector& mu_plus, const Vector& mu_minus,
                               std::uint64_t seed);

/// Appends, for each (label, count), `count` points drawn from the other
/// class's distribution but carrying `label`. Original rows are untouched.
Dataset inject_outliers(const Dataset& ds, const std::map<int, int>& count_per_class,
                        std::uint64_t seed, const GaussianPair& source = {});

/// Negates the labels of exactly floor(rate * n) distinct random rows.
Dataset inject_label_noise(const Dataset& ds, double rate, std::uint64_t seed,
                           std::vector<int>* flipped = nullptr);

/// Adds N(0, r * v_j) noise to column j, v_j its sample variance. Constant
/// columns are left bit-identical.
Dataset inject_feature_noise(const Dataset& ds, double ratio, std::uint64_t seed);

struct SplitPlan {
    std::vector<int> fold;  // fold id per row
    int k = 0;
    std::uint64_t seed = 0;

    std::vector<int> test_rows(int f) const;
    std::vector<int> train_rows(int f) const;
};

/// Per class: shuffle, then deal rows round-robin to folds, continuing the
/// rotation across classes. Per-class fold counts differ by at most one.
SplitPlan stratified_kfold(const Vector& y, int k, std::uint64_t seed);
SplitPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed);

} // namespace baen
