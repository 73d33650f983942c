#pragma once

/**
 * @file Svm.h
 * @brief One-vs-rest C-SVM with a polynomial kernel
 *
 * K(u, v) = (gamma * <u, v> + coef0)^degree
 *
 * Each binary problem is solved in the dual by pairwise (SMO-style)
 * updates using maximal-violating-pair selection with second-order
 * gain, until the KKT violation drops below tol.
 */

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace Sdpf {

struct SvmConfig {
    double c = 1.0;
    int degree = 3;
    double gamma = 0.0; ///< <= 0 selects 1 / dimension
    double coef0 = 1.0;
    double tol = 1e-3;
    int maxPasses = 10; ///< consecutive no-progress updates before giving up
    uint64_t seed = 0;

    void Validate() const;
};

/// Polynomial kernel value.
double PolynomialKernel(std::span<const double> u, std::span<const double> v,
                        double gamma, double coef0, int degree);

struct BinarySolution {
    std::vector<double> alpha; ///< 0 <= alpha_i <= C
    double rho = 0.0;          ///< decision = sum y_i alpha_i K(x_i, x) - rho
    long iterations = 0;
    double violation = 0.0;    ///< final maximal KKT violation
    bool converged = false;
};

/**
 * @brief Solve min 1/2 a'Qa - e'a s.t. 0 <= a <= C, y'a = 0, Q_ij = y_i y_j K_ij.
 *
 * @p gram is the dense n x n kernel matrix, @p labels are +1 / -1.
 */
BinarySolution SolveBinarySvm(std::span<const double> gram, std::span<const int> labels,
                              double c, double tol, int maxPasses);

/// Dual objective 1/2 a'Qa - e'a for a given solution.
double DualObjective(std::span<const double> gram, std::span<const int> labels,
                     std::span<const double> alpha);

/// One trained binary machine: f(x) = sum coef_i K(sv_i, x) + bias.
struct BinarySvm {
    std::vector<std::vector<double>> supportVectors;
    std::vector<double> coefficients; ///< y_i * alpha_i
    double bias = 0.0;
};

class SvmModel {
public:
    SvmModel() = default;
    SvmModel(SvmConfig config, int dimension, std::vector<std::string> labels,
             std::vector<BinarySvm> machines);

    const SvmConfig& Config() const { return config_; }
    int Dimension() const { return dimension_; }
    double Gamma() const { return gamma_; }
    const std::vector<std::string>& Labels() const { return labels_; }
    const std::vector<BinarySvm>& Machines() const { return machines_; }

    /// Free-form key/value pairs persisted with the model.
    std::map<std::string, std::string>& Metadata() { return metadata_; }
    const std::map<std::string, std::string>& Metadata() const { return metadata_; }

    /// One value per class. Throws InvalidArgument on a dimension mismatch.
    std::vector<double> DecisionValues(std::span<const double> x) const;

    /// Index of the class with the largest decision value; ties go to the lower index.
    int Predict(std::span<const double> x) const;

private:
    SvmConfig config_;
    int dimension_ = 0;
    double gamma_ = 0.0;
    std::vector<std::string> labels_;
    std::vector<BinarySvm> machines_;
    std::map<std::string, std::string> metadata_;
};

/**
 * @brief Train one binary machine per class.
 *
 * @p labels hold class indices into @p labelNames. Needs at least two
 * classes, each with an example. The examples are put in a canonical
 * order and then shuffled with the configured seed, so the result does
 * not depend on the order they were passed in.
 */
SvmModel TrainSvm(const std::vector<std::vector<double>>& samples, const std::vector<int>& labels,
                  std::vector<std::string> labelNames, const SvmConfig& cfg);

void WriteSvmModel(const SvmModel& model, std::ostream& out);
void SaveSvmModel(const SvmModel& model, const std::filesystem::path& path);
SvmModel ReadSvmModel(std::istream& in);
SvmModel LoadSvmModel(const std::filesystem::path& path);

} // namespace Sdpf
