#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "namecast/constraints.hpp"
#include "namecast/features.hpp"
#include "namecast/names.hpp"

namespace namecast {

// Row-stochastic prediction matrix: one probability row per instance.
struct PredictionMatrix {
    int n = 0;
    int k = 0;
    Eigen::MatrixXd values;
};

struct LossWeights {
    double initial = 1.0;       // lambda1
    double mi = 1.0;            // lambda2
    double negative = 1.0;      // lambda3
    double gender = 1.0;        // lambda4
    double distribution = 1.0;  // lambda5
};

struct SolverConfig {
    double step_size = 1.0;
    int max_iters = 2000;
    double tolerance = 1e-7;  // on relative objective decrease
    double backtrack = 0.5;
};

struct TracePoint {
    int iteration = 0;
    double objective = 0;
    double step = 0;
};

struct SolveResult {
    PredictionMatrix f;
    int iterations = 0;
    double objective = 0;
    bool converged = false;  // stopped on tolerance rather than max_iters
    std::vector<TracePoint> trace;
};

using IterationObserver =
    std::function<void(int iter, const Eigen::MatrixXd& f, double objective, double step)>;

// Label fit over positives (mean over distinct labeled instances) plus the
// graph smoothness term over all ordered pairs, normalized by n.
double loss_initial(const Eigen::MatrixXd& f, const ConstraintSet& c, const SimilarityGraph& g);

// Weighted one-hot fit for every multiple-instance target.
double loss_mi(const Eigen::MatrixXd& f, const ConstraintSet& c);

// Squared predicted mass on negated (instance, class) pairs.
double loss_negative(const Eigen::MatrixXd& f, const ConstraintSet& c);

// Linear penalty on gender-inconsistent mass; active only where voice and
// name genders sit strictly on opposite sides of 0.5.
double loss_gender(const Eigen::MatrixXd& f, const ConstraintSet& c,
                   const CharacterRoster& roster);

// Squared gap between the column means of f and the mention prior d.
double loss_distribution(const Eigen::MatrixXd& f, const ConstraintSet& c);

double total_loss(const Eigen::MatrixXd& f, const ConstraintSet& c, const SimilarityGraph& g,
                  const CharacterRoster& roster, const LossWeights& lw);

// Analytic gradient of total_loss in every entry of f.
Eigen::MatrixXd gradient(const Eigen::MatrixXd& f, const ConstraintSet& c,
                         const SimilarityGraph& g, const CharacterRoster& roster,
                         const LossWeights& lw);

// Euclidean projection onto the probability simplex (sort and threshold).
Eigen::VectorXd project_row_simplex(const Eigen::VectorXd& v);

// Projected gradient descent from uniform rows with backtracking line search.
// The objective never increases across iterations. Throws NumericalError if
// the objective turns non-finite.
SolveResult solve_pgd(const ConstraintSet& c, const SimilarityGraph& g,
                      const CharacterRoster& roster, const LossWeights& lw,
                      const SolverConfig& config, const IterationObserver& observer = {});

// Canonical name of the argmax class per row; ties go to the larger prior,
// then the lower class index.
std::vector<std::string> predict_names(const PredictionMatrix& f, const CharacterRoster& roster);

// Trace CSV with header "iteration,objective,step".
std::string format_trace_csv(const std::vector<TracePoint>& trace);

}  // namespace namecast
