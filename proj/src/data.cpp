#include "baen/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace baen {

void Dataset::validate() const
{
    if (X.rows() != y.size())
        throw DataError("dataset '" + name + "': row/label count mismatch");
    if (X.rows() < 2)
        throw DataError("dataset '" + name + "': fewer than 2 rows");
    if (!X.allFinite())
        throw DataError("dataset '" + name + "': non-finite feature value");
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y[i] != 1.0 && y[i] != -1.0)
            throw DataError("dataset '" + name + "': label at row " + std::to_string(i) + " is not +-1");
}

Dataset Dataset::subset(const std::vector<int>& rows) const
{
    Dataset out;
    out.name = name;
    out.feature_names = feature_names;
    out.X.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
    out.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out.X.row(static_cast<Eigen::Index>(r)) = X.row(rows[r]);
        out.y[static_cast<Eigen::Index>(r)] = y[rows[r]];
    }
    return out;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& out)
{
    if (s.empty())
        return false;
    const char* first = s.data();
    if (*first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

namespace {

struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> line_numbers;
};

RawTable read_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path + "'");

    RawTable t;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        t.rows.push_back(split(line));
        t.line_numbers.push_back(line_no);
    }
    if (t.rows.empty())
        throw DataError("'" + path + "' is empty");

    double tmp = 0.0;
    if (std::any_of(t.rows[0].begin(), t.rows[0].end(), [&](const std::string& c) { return !parse_double(c, tmp); })) {
        t.header = t.rows.front();
        t.rows.erase(t.rows.begin());
        t.line_numbers.erase(t.line_numbers.begin());
    }
    return t;
}

} // namespace

Matrix load_csv_features(const std::string& path)
{
    const RawTable t = read_table(path);
    if (t.rows.empty())
        throw DataError("'" + path + "' has no data rows");
    const std::size_t width = t.header.empty() ? t.rows[0].size() : t.header.size();
    Matrix X(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const int ln = t.line_numbers[i];
        if (t.rows[i].size() != width)
            throw DataError("'" + path + "' row " + std::to_string(ln) + ": expected " + std::to_string(width)
                            + " cells, found " + std::to_string(t.rows[i].size()));
        for (std::size_t j = 0; j < width; ++j) {
            double v = 0.0;
            if (!parse_double(t.rows[i][j], v) || !std::isfinite(v))
                throw DataError("'" + path + "' row " + std::to_string(ln) + ", column "
                                + (t.header.empty() ? std::to_string(j) : "'" + t.header[j] + "'")
                                + ": cannot parse '" + t.rows[i][j] + "'");
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    }
    return X;
}

Dataset load_csv(const std::string& path, const std::string& label_column)
{
    RawTable table = read_table(path);
    const std::vector<std::string>& header = table.header;
    const auto& rows = table.rows;
    const auto& line_numbers = table.line_numbers;
    if (rows.size() < 2)
        throw DataError("'" + path + "' has fewer than 2 data rows");

    const std::size_t width = header.empty() ? rows[0].size() : header.size();
    if (width < 2)
        throw DataError("'" + path + "' needs at least one feature and a label column");

    std::size_t label_idx = width - 1;
    if (!label_column.empty()) {
        const auto it = std::find(header.begin(), header.end(), label_column);
        if (it != header.end()) {
            label_idx = static_cast<std::size_t>(it - header.begin());
        } else {
            double idx = 0.0;
            if (!parse_double(label_column, idx) || idx < 0 || idx != std::floor(idx) || idx >= static_cast<double>(width))
                throw DataError("'" + path + "': label column '" + label_column + "' not found");
            label_idx = static_cast<std::size_t>(idx);
        }
    }

    auto column_name = [&](std::size_t j) {
        return header.empty() ? std::to_string(j) : "'" + header[j] + "'";
    };

    Dataset ds;
    ds.name = path;
    for (std::size_t j = 0; j < width; ++j)
        if (j != label_idx)
            ds.feature_names.push_back(header.empty() ? "x" + std::to_string(ds.feature_names.size() + 1) : header[j]);

    const auto n = static_cast<Eigen::Index>(rows.size());
    ds.X.resize(n, static_cast<Eigen::Index>(width - 1));
    ds.y.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& cells = rows[static_cast<std::size_t>(i)];
        const int ln = line_numbers[static_cast<std::size_t>(i)];
        if (cells.size() != width)
            throw DataError("'" + path + "' row " + std::to_string(ln) + ": expected " + std::to_string(width)
                            + " cells, found " + std::to_string(cells.size()));
        Eigen::Index col = 0;
        for (std::size_t j = 0; j < width; ++j) {
            double v = 0.0;
            if (!parse_double(cells[j], v) || !std::isfinite(v))
                throw DataError("'" + path + "' row " + std::to_string(ln) + ", column " + column_name(j)
                                + ": cannot parse '" + cells[j] + "'");
            if (j == label_idx) {
                if (v == 0.0 || v == -1.0)
                    ds.y[i] = -1.0;
                else if (v == 1.0)
                    ds.y[i] = 1.0;
                else
                    throw DataError("'" + path + "' row " + std::to_string(ln) + ": label '" + cells[j]
                                    + "' is not in {-1,+1} or {0,1}");
            } else {
                ds.X(i, col++) = v;
            }
        }
    }
    return ds;
}

void save_csv(const std::string& path, const Dataset& ds)
{
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write '" + path + "'");
    for (Eigen::Index j = 0; j < ds.features(); ++j) {
        const auto idx = static_cast<std::size_t>(j);
        out << (idx < ds.feature_names.size() ? ds.feature_names[idx] : "x" + std::to_string(j + 1)) << ',';
    }
    out << "label\n";
    for (Eigen::Index i = 0; i < ds.rows(); ++i) {
        for (Eigen::Index j = 0; j < ds.features(); ++j)
            out << fmt17(ds.X(i, j)) << ',';
        out << (ds.y[i] > 0 ? "1" : "-1") << '\n';
    }
    if (!out)
        throw DataError("failed writing '" + path + "'");
}

namespace {

void draw_rows(Matrix& X, Eigen::Index start, Eigen::Index count, const Vector& mu, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = start; i < start + count; ++i)
        for (Eigen::Index j = 0; j < mu.size(); ++j)
            X(i, j) = mu[j] + normal(rng);
}

std::vector<std::string> default_names(Eigen::Index d)
{
    std::vector<std::string> names;
    for (Eigen::Index j = 0; j < d; ++j)
        names.push_back("x" + std::to_string(j + 1));
    return names;
}

} // namespace

Dataset make_gaussian_twoclass(int n_per_class, const Vector& mu_plus, const Vector& mu_minus,
                               std::uint64_t seed)
{
    if (n_per_class < 1)
        throw std::invalid_argument("make_gaussian_twoclass: n_per_class must be >= 1");
    if (mu_plus.size() != mu_minus.size() || mu_plus.size() == 0)
        throw std::invalid_argument("make_gaussian_twoclass: class means differ in dimension");
    std::mt19937_64 rng(seed);
    Dataset ds;
    ds.name = "gaussian";
    ds.feature_names = default_names(mu_plus.size());
    ds.X.resize(2 * n_per_class, mu_plus.size());
    ds.y.resize(2 * n_per_class);
    draw_rows(ds.X, 0, n_per_class, mu_plus, rng);
    draw_rows(ds.X, n_per_class, n_per_class, mu_minus, rng);
    ds.y.head(n_per_class).setConstant(1.0);
    ds.y.tail(n_per_class).setConstant(-1.0);
    return ds;
}

Dataset inject_outliers(const Dataset& ds, const std::map<int, int>& count_per_class,
                        std::uint64_t seed, const GaussianPair& source)
{
    int extra = 0;
    for (const auto& [label, count] : count_per_class) {
        if (label != 1 && label != -1)
            throw std::invalid_argument("inject_outliers: class must be -1 or +1");
        if (count < 0)
            throw std::invalid_argument("inject_outliers: counts must be >= 0");
        extra += count;
    }
    if (extra > 0 && source.mu_plus.size() != ds.features())
        throw std::invalid_argument("inject_outliers: source means do not match feature count");

    std::mt19937_64 rng(seed);
    Dataset out = ds;
    const Eigen::Index n = ds.rows();
    out.X.conservativeResize(n + extra, ds.features());
    out.y.conservativeResize(n + extra);
    Eigen::Index at = n;
    // std::map iterates -1 before +1
    for (const auto& [label, count] : count_per_class) {
        const Vector& mu = label < 0 ? source.mu_plus : source.mu_minus;
        draw_rows(out.X, at, count, mu, rng);
        out.y.segment(at, count).setConstant(static_cast<double>(label));
        at += count;
    }
    return out;
}

Dataset inject_label_noise(const Dataset& ds, double rate, std::uint64_t seed, std::vector<int>* flipped)
{
    if (!(rate >= 0.0 && rate <= 1.0))
        throw std::invalid_argument("inject_label_noise: rate must lie in [0,1]");
    const auto n = static_cast<int>(ds.rows());
    const auto m = static_cast<int>(std::floor(rate * n));
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(m));
    std::sort(idx.begin(), idx.end());

    Dataset out = ds;
    for (int i : idx)
        out.y[i] = -out.y[i];
    if (flipped)
        *flipped = idx;
    return out;
}

Dataset inject_feature_noise(const Dataset& ds, double ratio, std::uint64_t seed)
{
    if (!(ratio >= 0.0) || !std::isfinite(ratio))
        throw std::invalid_argument("inject_feature_noise: ratio must be >= 0");
    Dataset out = ds;
    if (ratio == 0.0 || ds.rows() < 2)
        return out;
    std::mt19937_64 rng(seed);
    for (Eigen::Index j = 0; j < ds.features(); ++j) {
        const double mean = ds.X.col(j).mean();
        const double var = (ds.X.col(j).array() - mean).square().sum() / static_cast<double>(ds.rows() - 1);
        if (!(var > 0.0))
            continue;
        std::normal_distribution<double> noise(0.0, std::sqrt(ratio * var));
        for (Eigen::Index i = 0; i < ds.rows(); ++i)
            out.X(i, j) += noise(rng);
    }
    return out;
}

std::vector<int> SplitPlan::test_rows(int f) const
{
    std::vector<int> rows;
    for (std::size_t i = 0; i < fold.size(); ++i)
        if (fold[i] == f)
            rows.push_back(static_cast<int>(i));
    return rows;
}

std::vector<int> SplitPlan::train_rows(int f) const
{
    std::vector<int> rows;
    for (std::size_t i = 0; i < fold.size(); ++i)
        if (fold[i] != f)
            rows.push_back(static_cast<int>(i));
    return rows;
}

SplitPlan stratified_kfold(const Vector& y, int k, std::uint64_t seed)
{
    if (k < 2)
        throw std::invalid_argument("stratified_kfold: k must be >= 2");
    std::vector<int> pos, neg;
    for (Eigen::Index i = 0; i < y.size(); ++i)
        (y[i] > 0 ? pos : neg).push_back(static_cast<int>(i));
    for (const auto* cls : {&neg, &pos})
        if (static_cast<int>(cls->size()) < k)
            throw DataError("stratified_kfold: a class has " + std::to_string(cls->size())
                            + " members, fewer than k = " + std::to_string(k));

    SplitPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.fold.assign(static_cast<std::size_t>(y.size()), 0);
    std::mt19937_64 rng(seed);
    int next = 0;
    for (auto* cls : {&neg, &pos}) {
        std::shuffle(cls->begin(), cls->end(), rng);
        for (int row : *cls) {
            plan.fold[static_cast<std::size_t>(row)] = next;
            next = (next + 1) % k;
        }
    }
    return plan;
}

SplitPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed)
{
    return stratified_kfold(ds.y, k, seed);
}

} // namespace baen
