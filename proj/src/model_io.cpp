#include "baen/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace baen {

namespace {

constexpr const char* kMagic = "baen-model";
constexpr int kVersion = 1;

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_vector(std::ostream& out, const char* key, const Vector& v)
{
    out << key;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out << ' ' << fmt17(v[i]);
    out << '\n';
}

void expect_key(std::istream& in, const std::string& key)
{
    std::string got;
    if (!(in >> got) || got != key)
        throw std::runtime_error("model file: expected '" + key + "', found '" + got + "'");
}

template <class T>
T read_value(std::istream& in, const std::string& key)
{
    expect_key(in, key);
    T v{};
    if (!(in >> v))
        throw std::runtime_error("model file: bad value for '" + key + "'");
    return v;
}

Vector read_vector(std::istream& in, const std::string& key, Eigen::Index n)
{
    expect_key(in, key);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(in >> v[i]))
            throw std::runtime_error("model file: short vector '" + key + "'");
    return v;
}

} // namespace

void write_model(std::ostream& out, const Model& model)
{
    const TrainConfig& c = model.config;
    out << kMagic << ' ' << kVersion << '\n';
    out << "preset " << c.preset << '\n';
    out << "bounded " << (c.bounded ? 1 : 0) << '\n';
    out << "C " << fmt17(c.C) << '\n';
    out << "lambda " << fmt17(c.loss.lambda()) << '\n';
    out << "eta " << fmt17(c.loss.eta()) << '\n';
    out << "tau " << fmt17(c.loss.tau()) << '\n';
    out << "p " << fmt17(c.loss.p()) << '\n';
    out << "kernel " << c.kernel.name() << ' ' << fmt17(c.kernel.sigma()) << '\n';
    out << "hq_tol " << fmt17(c.hq_tol) << '\n';
    out << "hq_max_iters " << c.hq_max_iters << '\n';
    out << "inner_tol " << fmt17(c.solver.inner_tol) << '\n';
    out << "max_inner_iters " << c.solver.max_inner_iters << '\n';
    out << "samples " << model.samples() << '\n';
    out << "features " << model.features() << '\n';
    out << "standardized " << (model.scaler ? 1 : 0) << '\n';
    if (model.scaler) {
        write_vector(out, "mean", model.scaler->mean);
        write_vector(out, "scale", model.scaler->scale);
    }
    write_vector(out, "labels", model.y);
    write_vector(out, "alpha", model.alpha);
    write_vector(out, "beta", model.beta);
    out << "rows\n";
    for (Eigen::Index i = 0; i < model.samples(); ++i) {
        for (Eigen::Index j = 0; j < model.features(); ++j)
            out << (j ? " " : "") << fmt17(model.support_X(i, j));
        out << '\n';
    }
}

Model read_model(std::istream& in)
{
    const int version = read_value<int>(in, kMagic);
    if (version != kVersion)
        throw std::runtime_error("model file: unsupported version " + std::to_string(version));
    Model m;
    TrainConfig& c = m.config;
    c.preset = read_value<std::string>(in, "preset");
    c.bounded = read_value<int>(in, "bounded") != 0;
    c.C = read_value<double>(in, "C");
    const double lambda = read_value<double>(in, "lambda");
    const double eta = read_value<double>(in, "eta");
    const double tau = read_value<double>(in, "tau");
    const double p = read_value<double>(in, "p");
    c.loss = LossParams(lambda, eta, tau, p);
    const auto kname = read_value<std::string>(in, "kernel");
    double sigma = 0.0;
    if (!(in >> sigma))
        throw std::runtime_error("model file: bad kernel width");
    c.kernel = KernelSpec::parse(kname, sigma);
    c.hq_tol = read_value<double>(in, "hq_tol");
    c.hq_max_iters = read_value<int>(in, "hq_max_iters");
    c.solver.inner_tol = read_value<double>(in, "inner_tol");
    c.solver.max_inner_iters = read_value<long>(in, "max_inner_iters");
    const auto n = read_value<Eigen::Index>(in, "samples");
    const auto d = read_value<Eigen::Index>(in, "features");
    if (n < 1 || d < 1)
        throw std::runtime_error("model file: empty model");
    if (read_value<int>(in, "standardized") != 0) {
        Standardizer s;
        s.mean = read_vector(in, "mean", d);
        s.scale = read_vector(in, "scale", d);
        m.scaler = s;
    }
    m.y = read_vector(in, "labels", n);
    m.alpha = read_vector(in, "alpha", n);
    m.beta = read_vector(in, "beta", n);
    expect_key(in, "rows");
    m.support_X.resize(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            if (!(in >> m.support_X(i, j)))
                throw std::runtime_error("model file: truncated sample matrix");
    return m;
}

void save_model(const std::string& path, const Model& model)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write model file '" + path + "'");
    write_model(out, model);
}

Model load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open model file '" + path + "'");
    return read_model(in);
}

} // namespace baen
