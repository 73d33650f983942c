/**
 * @file Svm.cpp
 */

#include <sdpf/Svm.h>
#include <sdpf/Error.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace Sdpf {

void SvmConfig::Validate() const {
    if (!(c > 0.0)) throw InvalidArgument("SVM C must be positive");
    if (degree < 1) throw InvalidArgument("SVM degree must be >= 1");
    if (!(tol > 0.0)) throw InvalidArgument("SVM tolerance must be positive");
    if (maxPasses < 1) throw InvalidArgument("SVM max_passes must be >= 1");
}

double PolynomialKernel(std::span<const double> u, std::span<const double> v,
                        double gamma, double coef0, int degree) {
    double dot = 0.0;
    for (size_t k = 0; k < u.size(); ++k) dot += u[k] * v[k];
    const double base = gamma * dot + coef0;
    double result = 1.0;
    for (int d = 0; d < degree; ++d) result *= base;
    return result;
}

// =============================================================================
// Binary dual solver
// =============================================================================

BinarySolution SolveBinarySvm(std::span<const double> gram, std::span<const int> labels,
                              double c, double tol, int maxPasses) {
    const size_t n = labels.size();
    if (gram.size() != n * n) throw InvalidArgument("Gram matrix size mismatch");
    constexpr double kTau = 1e-12;
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = labels[i] > 0 ? 1.0 : -1.0;

    auto kernel = [&](size_t i, size_t j) { return gram[i * n + j]; };
    auto atUpper = [&](size_t t) { return alpha[t] >= c; };
    auto atLower = [&](size_t t) { return alpha[t] <= 0.0; };

    BinarySolution sol;
    const long maxIterations = std::max<long>(10'000'000L, 100L * static_cast<long>(n));
    int stalls = 0;

    while (sol.iterations < maxIterations) {
        // i: maximal violator in I_up
        double gmax = -kInf;
        long iSel = -1;
        for (size_t t = 0; t < n; ++t) {
            if (y[t] > 0) {
                if (!atUpper(t) && -grad[t] > gmax) { gmax = -grad[t]; iSel = static_cast<long>(t); }
            } else {
                if (!atLower(t) && grad[t] > gmax) { gmax = grad[t]; iSel = static_cast<long>(t); }
            }
        }
        // j: best second-order gain in I_low
        double gmax2 = -kInf;
        long jSel = -1;
        double objMin = kInf;
        if (iSel >= 0) {
            const size_t i = static_cast<size_t>(iSel);
            for (size_t t = 0; t < n; ++t) {
                double gradDiff;
                if (y[t] > 0) {
                    if (atLower(t)) continue;
                    gmax2 = std::max(gmax2, grad[t]);
                    gradDiff = gmax + grad[t];
                } else {
                    if (atUpper(t)) continue;
                    gmax2 = std::max(gmax2, -grad[t]);
                    gradDiff = gmax - grad[t];
                }
                if (gradDiff > 0.0) {
                    double quad = kernel(i, i) + kernel(t, t) - 2.0 * kernel(i, t);
                    double obj = -(gradDiff * gradDiff) / (quad > 0.0 ? quad : kTau);
                    if (obj < objMin) { objMin = obj; jSel = static_cast<long>(t); }
                }
            }
        }
        sol.violation = (iSel >= 0 && gmax2 > -kInf) ? gmax + gmax2 : 0.0;
        if (iSel < 0 || jSel < 0 || sol.violation < tol) {
            sol.converged = true;
            break;
        }

        const size_t i = static_cast<size_t>(iSel);
        const size_t j = static_cast<size_t>(jSel);
        const double oldI = alpha[i];
        const double oldJ = alpha[j];
        double quad = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
        if (quad <= 0.0) quad = kTau;

        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = diff; }
            } else {
                if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = -diff; }
            }
            if (diff > 0.0) {
                if (alpha[i] > c) { alpha[i] = c; alpha[j] = c - diff; }
            } else {
                if (alpha[j] > c) { alpha[j] = c; alpha[i] = c + diff; }
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > c) {
                if (alpha[i] > c) { alpha[i] = c; alpha[j] = sum - c; }
            } else {
                if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = sum; }
            }
            if (sum > c) {
                if (alpha[j] > c) { alpha[j] = c; alpha[i] = sum - c; }
            } else {
                if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = sum; }
            }
        }

        const double dI = alpha[i] - oldI;
        const double dJ = alpha[j] - oldJ;
        for (size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * (y[i] * kernel(i, t) * dI + y[j] * kernel(j, t) * dJ);
        }
        ++sol.iterations;

        if (std::abs(dI) + std::abs(dJ) < 1e-15) {
            if (++stalls >= maxPasses) break;
        } else {
            stalls = 0;
        }
    }

    // Offset from free vectors, or the midpoint of the feasible interval.
    double ub = kInf;
    double lb = -kInf;
    double sumFree = 0.0;
    int nFree = 0;
    for (size_t t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (atUpper(t)) {
            if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (atLower(t)) {
            if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++nFree;
            sumFree += yg;
        }
    }
    if (nFree > 0) {
        sol.rho = sumFree / nFree;
    } else if (std::isfinite(ub) && std::isfinite(lb)) {
        sol.rho = 0.5 * (ub + lb);
    } else {
        sol.rho = std::isfinite(ub) ? ub : (std::isfinite(lb) ? lb : 0.0);
    }
    sol.alpha = std::move(alpha);
    return sol;
}

double DualObjective(std::span<const double> gram, std::span<const int> labels,
                     std::span<const double> alpha) {
    const size_t n = labels.size();
    double quad = 0.0;
    double lin = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (alpha[i] == 0.0) continue;
        lin += alpha[i];
        const double yi = labels[i] > 0 ? 1.0 : -1.0;
        for (size_t j = 0; j < n; ++j) {
            if (alpha[j] == 0.0) continue;
            const double yj = labels[j] > 0 ? 1.0 : -1.0;
            quad += alpha[i] * alpha[j] * yi * yj * gram[i * n + j];
        }
    }
    return 0.5 * quad - lin;
}

// =============================================================================
// Multi-class model
// =============================================================================

SvmModel::SvmModel(SvmConfig config, int dimension, std::vector<std::string> labels,
                   std::vector<BinarySvm> machines)
    : config_(config), dimension_(dimension), labels_(std::move(labels)), machines_(std::move(machines)) {
    gamma_ = config_.gamma > 0.0 ? config_.gamma : 1.0 / std::max(dimension_, 1);
    if (labels_.size() != machines_.size()) {
        throw InvalidArgument("SVM model: one machine per label expected");
    }
}

std::vector<double> SvmModel::DecisionValues(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dimension_) {
        throw InvalidArgument("descriptor length " + std::to_string(x.size()) +
                              " does not match model dimension " + std::to_string(dimension_));
    }
    std::vector<double> values(machines_.size());
    for (size_t m = 0; m < machines_.size(); ++m) {
        const BinarySvm& svm = machines_[m];
        double f = svm.bias;
        for (size_t s = 0; s < svm.supportVectors.size(); ++s) {
            f += svm.coefficients[s] * PolynomialKernel(svm.supportVectors[s], x, gamma_, config_.coef0, config_.degree);
        }
        values[m] = f;
    }
    return values;
}

int SvmModel::Predict(std::span<const double> x) const {
    std::vector<double> values = DecisionValues(x);
    int best = 0;
    for (size_t m = 1; m < values.size(); ++m) {
        if (values[m] > values[static_cast<size_t>(best)]) best = static_cast<int>(m);
    }
    return best;
}

SvmModel TrainSvm(const std::vector<std::vector<double>>& samples, const std::vector<int>& labels,
                  std::vector<std::string> labelNames, const SvmConfig& cfg) {
    cfg.Validate();
    if (samples.empty()) throw InvalidArgument("cannot train on an empty dataset");
    if (samples.size() != labels.size()) throw InvalidArgument("sample and label counts differ");
    const int classCount = static_cast<int>(labelNames.size());
    if (classCount < 2) throw InvalidArgument("training needs at least two classes");
    const size_t dim = samples.front().size();
    std::vector<int> perClass(static_cast<size_t>(classCount), 0);
    for (size_t k = 0; k < samples.size(); ++k) {
        if (samples[k].size() != dim) throw InvalidArgument("training samples differ in length");
        if (labels[k] < 0 || labels[k] >= classCount) throw InvalidArgument("label index out of range");
        ++perClass[static_cast<size_t>(labels[k])];
    }
    for (int count : perClass) {
        if (count == 0) throw InvalidArgument("every class needs at least one training example");
    }

    // Canonical order, then a seeded Fisher-Yates shuffle.
    std::vector<size_t> order(samples.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (labels[a] != labels[b]) return labels[a] < labels[b];
        return samples[a] < samples[b];
    });
    std::mt19937_64 rng(cfg.seed);
    for (size_t k = order.size(); k > 1; --k) {
        std::swap(order[k - 1], order[static_cast<size_t>(rng() % k)]);
    }

    const size_t n = order.size();
    const double gamma = cfg.gamma > 0.0 ? cfg.gamma : 1.0 / static_cast<double>(std::max<size_t>(dim, 1));
    std::vector<double> gram(n * n);
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = a; b < n; ++b) {
            double k = PolynomialKernel(samples[order[a]], samples[order[b]], gamma, cfg.coef0, cfg.degree);
            gram[a * n + b] = k;
            gram[b * n + a] = k;
        }
    }

    std::vector<BinarySvm> machines;
    machines.reserve(static_cast<size_t>(classCount));
    std::vector<int> y(n);
    for (int cls = 0; cls < classCount; ++cls) {
        for (size_t a = 0; a < n; ++a) y[a] = labels[order[a]] == cls ? 1 : -1;
        BinarySolution sol = SolveBinarySvm(gram, y, cfg.c, cfg.tol, cfg.maxPasses);
        BinarySvm svm;
        svm.bias = -sol.rho;
        for (size_t a = 0; a < n; ++a) {
            if (sol.alpha[a] > 0.0) {
                svm.supportVectors.push_back(samples[order[a]]);
                svm.coefficients.push_back(y[a] * sol.alpha[a]);
            }
        }
        machines.push_back(std::move(svm));
    }
    return SvmModel(cfg, static_cast<int>(dim), std::move(labelNames), std::move(machines));
}

// =============================================================================
// Persistence
// =============================================================================

namespace {

std::string FormatDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string ExpectLine(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) {
        throw MalformedFile(std::string("model file: unexpected end while reading ") + what);
    }
    return line;
}

std::string ExpectKeyword(const std::string& line, const std::string& keyword) {
    if (line.rfind(keyword + " ", 0) != 0) {
        throw MalformedFile("model file: expected '" + keyword + "', got '" + line + "'");
    }
    return line.substr(keyword.size() + 1);
}

std::map<std::string, std::string> ParsePairs(const std::string& text) {
    std::map<std::string, std::string> pairs;
    std::istringstream ss(text);
    std::string token;
    while (ss >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) throw MalformedFile("model file: bad key=value '" + token + "'");
        pairs[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return pairs;
}

double ParseNumber(const std::string& s) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw MalformedFile("model file: bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw MalformedFile("model file: bad number '" + s + "'");
    }
}

const std::string& Require(const std::map<std::string, std::string>& pairs, const std::string& key) {
    auto it = pairs.find(key);
    if (it == pairs.end()) throw MalformedFile("model file: missing config key '" + key + "'");
    return it->second;
}

} // namespace

void WriteSvmModel(const SvmModel& model, std::ostream& out) {
    const SvmConfig& cfg = model.Config();
    out << "SDPFSVM1\n";
    out << "config C=" << FormatDouble(cfg.c) << " degree=" << cfg.degree
        << " gamma=" << FormatDouble(model.Gamma()) << " coef0=" << FormatDouble(cfg.coef0)
        << " tol=" << FormatDouble(cfg.tol) << " max_passes=" << cfg.maxPasses << " seed=" << cfg.seed
        << " dim=" << model.Dimension() << " classes=" << model.Labels().size() << '\n';
    out << "meta";
    for (const auto& [key, value] : model.Metadata()) out << ' ' << key << '=' << value;
    out << '\n';
    for (size_t m = 0; m < model.Machines().size(); ++m) {
        const BinarySvm& svm = model.Machines()[m];
        out << "class " << model.Labels()[m] << '\n';
        out << "bias " << FormatDouble(svm.bias) << '\n';
        out << "sv " << svm.supportVectors.size() << '\n';
        for (size_t s = 0; s < svm.supportVectors.size(); ++s) {
            out << FormatDouble(svm.coefficients[s]);
            for (double v : svm.supportVectors[s]) out << ' ' << FormatDouble(v);
            out << '\n';
        }
    }
}

void SaveSvmModel(const SvmModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    WriteSvmModel(model, out);
    if (!out) throw IoError("write failed: " + path.string());
}

SvmModel ReadSvmModel(std::istream& in) {
    if (ExpectLine(in, "header") != "SDPFSVM1") throw MalformedFile("model file: bad header");
    auto config = ParsePairs(ExpectKeyword(ExpectLine(in, "config"), "config"));
    std::string metaLine = ExpectLine(in, "meta");
    std::map<std::string, std::string> meta;
    if (metaLine != "meta") meta = ParsePairs(ExpectKeyword(metaLine, "meta"));

    SvmConfig cfg;
    cfg.c = ParseNumber(Require(config, "C"));
    cfg.degree = static_cast<int>(ParseNumber(Require(config, "degree")));
    cfg.gamma = ParseNumber(Require(config, "gamma"));
    cfg.coef0 = ParseNumber(Require(config, "coef0"));
    cfg.tol = ParseNumber(Require(config, "tol"));
    cfg.maxPasses = static_cast<int>(ParseNumber(Require(config, "max_passes")));
    cfg.seed = std::stoull(Require(config, "seed"));
    cfg.Validate();
    const int dim = static_cast<int>(ParseNumber(Require(config, "dim")));
    const int classes = static_cast<int>(ParseNumber(Require(config, "classes")));
    if (dim < 1 || classes < 1) throw MalformedFile("model file: bad dimensions");

    std::vector<std::string> labels;
    std::vector<BinarySvm> machines;
    for (int m = 0; m < classes; ++m) {
        labels.push_back(ExpectKeyword(ExpectLine(in, "class"), "class"));
        BinarySvm svm;
        svm.bias = ParseNumber(ExpectKeyword(ExpectLine(in, "bias"), "bias"));
        const long count = std::stol(ExpectKeyword(ExpectLine(in, "sv"), "sv"));
        for (long s = 0; s < count; ++s) {
            std::istringstream row(ExpectLine(in, "support vector"));
            std::vector<double> values;
            std::string token;
            while (row >> token) values.push_back(ParseNumber(token));
            if (static_cast<int>(values.size()) != dim + 1) {
                throw MalformedFile("model file: support vector has wrong length");
            }
            svm.coefficients.push_back(values.front());
            svm.supportVectors.emplace_back(values.begin() + 1, values.end());
        }
        machines.push_back(std::move(svm));
    }
    SvmModel model(cfg, dim, std::move(labels), std::move(machines));
    model.Metadata() = std::move(meta);
    return model;
}

SvmModel LoadSvmModel(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound("cannot open model file: " + path.string());
    return ReadSvmModel(in);
}

} // namespace Sdpf
