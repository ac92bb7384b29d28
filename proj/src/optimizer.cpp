#include "namecast/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"

namespace namecast {

namespace {

int distinct_labeled_count(const ConstraintSet& c) {
    std::set<int> seen;
    for (const auto& [i, j] : c.positives) seen.insert(i);
    return static_cast<int>(seen.size());
}

// Gender coefficient for entry (i, j): the factor multiplying f^j(x_i) in the
// gender loss, zero outside Q1 and Q2.
double gender_coefficient(double p_audio, double p_name) {
    if (p_audio < 0.5 && p_name > 0.5) return p_audio * (1.0 - p_name);  // Q1
    if (p_audio > 0.5 && p_name < 0.5) return (1.0 - p_audio) * p_name;  // Q2
    return 0.0;
}

}  // namespace

double loss_initial(const Eigen::MatrixXd& f, const ConstraintSet& c, const SimilarityGraph& g) {
    double fit = 0;
    int l = distinct_labeled_count(c);
    for (const auto& [i, j] : c.positives) {
        Eigen::VectorXd diff = f.row(i).transpose();
        diff[j] -= 1.0;
        fit += diff.squaredNorm();
    }
    if (l > 0) fit /= l;

    double smooth = 0;
    const int n = static_cast<int>(f.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double w = g.weights(i, j);
            if (w != 0.0) smooth += w * (f.row(i) - f.row(j)).squaredNorm();
        }
    smooth /= n;
    return fit + smooth;
}

double loss_mi(const Eigen::MatrixXd& f, const ConstraintSet& c) {
    double loss = 0;
    for (const ConstraintSet::MiTarget& t : c.mi_targets) {
        Eigen::VectorXd diff = f.row(t.instance).transpose();
        diff[t.cls] -= 1.0;
        loss += t.weight * diff.squaredNorm();
    }
    return loss;
}

double loss_negative(const Eigen::MatrixXd& f, const ConstraintSet& c) {
    double loss = 0;
    for (const auto& [i, j] : c.negatives) loss += f(i, j) * f(i, j);
    return loss;
}

double loss_gender(const Eigen::MatrixXd& f, const ConstraintSet& c,
                   const CharacterRoster& roster) {
    const int k = static_cast<int>(f.cols());
    double loss = 0;
    for (const auto& [i, p_audio] : c.p_male_audio) {
        if (i < 0 || i >= f.rows()) continue;
        for (int j = 0; j < k; ++j) {
            double coeff = gender_coefficient(p_audio, roster.clusters[j].p_male_name);
            if (coeff != 0.0) loss += coeff * f(i, j);
        }
    }
    return loss;
}

double loss_distribution(const Eigen::MatrixXd& f, const ConstraintSet& c) {
    const int n = static_cast<int>(f.rows());
    double loss = 0;
    for (int j = 0; j < f.cols(); ++j) {
        double mean = f.col(j).sum() / n;
        double gap = mean - c.prior[j];
        loss += gap * gap;
    }
    return loss;
}

double total_loss(const Eigen::MatrixXd& f, const ConstraintSet& c, const SimilarityGraph& g,
                  const CharacterRoster& roster, const LossWeights& lw) {
    double total = 0;
    if (lw.initial != 0) total += lw.initial * loss_initial(f, c, g);
    if (lw.mi != 0) total += lw.mi * loss_mi(f, c);
    if (lw.negative != 0) total += lw.negative * loss_negative(f, c);
    if (lw.gender != 0) total += lw.gender * loss_gender(f, c, roster);
    if (lw.distribution != 0) total += lw.distribution * loss_distribution(f, c);
    return total;
}

Eigen::MatrixXd gradient(const Eigen::MatrixXd& f, const ConstraintSet& c,
                         const SimilarityGraph& g, const CharacterRoster& roster,
                         const LossWeights& lw) {
    const int n = static_cast<int>(f.rows());
    const int k = static_cast<int>(f.cols());
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, k);

    if (lw.initial != 0) {
        int l = distinct_labeled_count(c);
        for (const auto& [i, j] : c.positives) {
            Eigen::VectorXd diff = f.row(i).transpose();
            diff[j] -= 1.0;
            grad.row(i) += (lw.initial * 2.0 / l) * diff.transpose();
        }
        // d/df of (1/n) sum_ij w_ij ||f_i - f_j||^2 = (4/n) (D - W) f for
        // symmetric w; written out with degrees to stay exact for any input
        Eigen::VectorXd degree = g.weights.rowwise().sum() + g.weights.colwise().sum().transpose();
        grad += (lw.initial / n) *
                (degree.asDiagonal() * f * 2.0 - 2.0 * (g.weights + g.weights.transpose()) * f);
    }

    if (lw.mi != 0) {
        for (const ConstraintSet::MiTarget& t : c.mi_targets) {
            Eigen::VectorXd diff = f.row(t.instance).transpose();
            diff[t.cls] -= 1.0;
            grad.row(t.instance) += (lw.mi * 2.0 * t.weight) * diff.transpose();
        }
    }

    if (lw.negative != 0)
        for (const auto& [i, j] : c.negatives) grad(i, j) += lw.negative * 2.0 * f(i, j);

    if (lw.gender != 0) {
        for (const auto& [i, p_audio] : c.p_male_audio) {
            if (i < 0 || i >= n) continue;
            for (int j = 0; j < k; ++j)
                grad(i, j) += lw.gender * gender_coefficient(p_audio, roster.clusters[j].p_male_name);
        }
    }

    if (lw.distribution != 0) {
        for (int j = 0; j < k; ++j) {
            double gap = f.col(j).sum() / n - c.prior[j];
            grad.col(j).array() += lw.distribution * 2.0 * gap / n;
        }
    }
    return grad;
}

Eigen::VectorXd project_row_simplex(const Eigen::VectorXd& v) {
    const int k = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + k);
    std::sort(u.begin(), u.end(), std::greater<double>());

    double running = 0;
    double tau = 0;
    for (int i = 0; i < k; ++i) {
        running += u[i];
        double candidate = (running - 1.0) / (i + 1);
        if (u[i] > candidate) tau = candidate;  // largest feasible threshold wins
    }

    Eigen::VectorXd p(k);
    for (int i = 0; i < k; ++i) p[i] = std::max(v[i] - tau, 0.0);
    return p;
}

namespace {

// Precomputed objective evaluator for the solver's inner loop. Produces the
// same values as the public loss functions; a unit test pins the agreement.
class ObjectiveEval {
public:
    ObjectiveEval(const ConstraintSet& c, const SimilarityGraph& g,
                  const CharacterRoster& roster, const LossWeights& lw)
        : c_(c), lw_(lw), n_(c.n), k_(roster.size()) {
        l_ = distinct_labeled_count(c);

        adjacency_.resize(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                double w = g.weights(i, j);
                if (w != 0.0) adjacency_[i].push_back({j, w});
            }

        if (lw.gender != 0) {
            for (const auto& [i, p_audio] : c.p_male_audio) {
                if (i < 0 || i >= n_) continue;
                for (int j = 0; j < k_; ++j) {
                    double coeff = gender_coefficient(p_audio, roster.clusters[j].p_male_name);
                    if (coeff != 0.0) gender_terms_.push_back({i, j, coeff});
                }
            }
        }
    }

    double total(const Eigen::MatrixXd& f) const {
        double total = 0;

        // ||f_i - e_j||^2 = ||f_i||^2 - 2 f_ij + 1 turns every one-hot fit
        // term into O(1) lookups
        Eigen::VectorXd row_sq = f.rowwise().squaredNorm();

        if (lw_.initial != 0) {
            double fit = 0;
            for (const auto& [i, j] : c_.positives) fit += row_sq[i] - 2.0 * f(i, j) + 1.0;
            if (l_ > 0) fit /= l_;
            double smooth = 0;
            for (int i = 0; i < n_; ++i)
                for (const auto& [j, w] : adjacency_[i])
                    smooth += w * (row_sq[i] + row_sq[j] - 2.0 * f.row(i).dot(f.row(j)));
            total += lw_.initial * (fit + smooth / n_);
        }

        if (lw_.mi != 0) {
            double mi = 0;
            for (const ConstraintSet::MiTarget& t : c_.mi_targets)
                mi += t.weight * (row_sq[t.instance] - 2.0 * f(t.instance, t.cls) + 1.0);
            total += lw_.mi * mi;
        }

        if (lw_.negative != 0) {
            double neg = 0;
            for (const auto& [i, j] : c_.negatives) neg += f(i, j) * f(i, j);
            total += lw_.negative * neg;
        }

        if (lw_.gender != 0) {
            double gender = 0;
            for (const GenderTerm& t : gender_terms_) gender += t.coeff * f(t.instance, t.cls);
            total += lw_.gender * gender;
        }

        if (lw_.distribution != 0) {
            double dis = 0;
            for (int j = 0; j < k_; ++j) {
                double gap = f.col(j).sum() / n_ - c_.prior[j];
                dis += gap * gap;
            }
            total += lw_.distribution * dis;
        }
        return total;
    }

    void add_gradient(const Eigen::MatrixXd& f, Eigen::MatrixXd& grad) const {
        grad.setZero();

        if (lw_.initial != 0) {
            const double pos_scale = l_ > 0 ? lw_.initial * 2.0 / l_ : 0.0;
            for (const auto& [i, j] : c_.positives) {
                grad.row(i) += pos_scale * f.row(i);
                grad(i, j) -= pos_scale;
            }
            const double scale = lw_.initial * 4.0 / n_;
            for (int i = 0; i < n_; ++i)
                for (const auto& [j, w] : adjacency_[i])
                    grad.row(i) += (scale * w) * (f.row(i) - f.row(j));
        }

        if (lw_.mi != 0) {
            for (const ConstraintSet::MiTarget& t : c_.mi_targets) {
                const double s = lw_.mi * 2.0 * t.weight;
                grad.row(t.instance) += s * f.row(t.instance);
                grad(t.instance, t.cls) -= s;
            }
        }

        if (lw_.negative != 0)
            for (const auto& [i, j] : c_.negatives) grad(i, j) += lw_.negative * 2.0 * f(i, j);

        if (lw_.gender != 0)
            for (const GenderTerm& t : gender_terms_)
                grad(t.instance, t.cls) += lw_.gender * t.coeff;

        if (lw_.distribution != 0) {
            for (int j = 0; j < k_; ++j) {
                double gap = f.col(j).sum() / n_ - c_.prior[j];
                grad.col(j).array() += lw_.distribution * 2.0 * gap / n_;
            }
        }
    }

private:
    struct GenderTerm {
        int instance;
        int cls;
        double coeff;
    };

    const ConstraintSet& c_;
    LossWeights lw_;
    int n_;
    int k_;
    int l_ = 0;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::vector<GenderTerm> gender_terms_;
};

void project_rows_inplace(Eigen::MatrixXd& f) {
    for (int i = 0; i < f.rows(); ++i) f.row(i) = project_row_simplex(f.row(i).transpose());
}

void check_feasible(const Eigen::MatrixXd& f) {
    for (int i = 0; i < f.rows(); ++i) {
        double sum = f.row(i).sum();
        if (std::abs(sum - 1.0) > 1e-9 || f.row(i).minCoeff() < 0.0)
            throw NumericalError("prediction row left the simplex at instance " +
                                 std::to_string(i));
    }
}

}  // namespace

SolveResult solve_pgd(const ConstraintSet& c, const SimilarityGraph& g,
                      const CharacterRoster& roster, const LossWeights& lw,
                      const SolverConfig& config, const IterationObserver& observer) {
    const int n = c.n;
    const int k = roster.size();
    if (n < 1) throw ConfigError("solve_pgd: need at least one instance");
    if (k < 1) throw ConfigError("solve_pgd: need at least one class");
    if (config.step_size <= 0 || config.backtrack <= 0 || config.backtrack >= 1)
        throw ConfigError("solve_pgd: invalid solver configuration");

    ObjectiveEval eval(c, g, roster, lw);

    SolveResult res;
    res.f.n = n;
    res.f.k = k;
    Eigen::MatrixXd f = Eigen::MatrixXd::Constant(n, k, 1.0 / k);
    Eigen::MatrixXd grad(n, k);
    double objective = eval.total(f);
    if (!std::isfinite(objective)) throw NumericalError("non-finite objective at start");

    // sufficient-decrease constant for the projected-gradient line search
    constexpr double kArmijo = 1e-4;

    double carried_step = config.step_size / 2.0;  // first try lands on step_size
    for (int iter = 1; iter <= config.max_iters; ++iter) {
        eval.add_gradient(f, grad);

        // resume above the last accepted step so flat directions still make
        // progress; backtracking pulls any overshoot straight back down
        double step = std::min(carried_step * 2.0, 1e12);
        Eigen::MatrixXd candidate;
        double cand_obj = 0;
        bool accepted = false;
        while (step > 1e-18) {
            candidate = f - step * grad;
            project_rows_inplace(candidate);
            cand_obj = eval.total(candidate);
            if (!std::isfinite(cand_obj)) throw NumericalError("non-finite objective");
            // accept only real progress, proportional to how far the step
            // moved; a bare non-increase can stall short of the optimum
            double moved = (candidate - f).squaredNorm();
            if (cand_obj <= objective - (kArmijo / step) * moved) {
                accepted = true;
                break;
            }
            step *= config.backtrack;
        }
        if (!accepted) {
            // no step makes progress: the decrease is zero, below any tolerance
            res.converged = true;
            break;
        }

        carried_step = step;
        f.swap(candidate);
        check_feasible(f);
        double decrease = objective - cand_obj;
        double rel = objective > 0 ? decrease / objective : 0.0;
        objective = cand_obj;

        res.iterations = iter;
        res.trace.push_back({iter, objective, step});
        if (observer) observer(iter, f, objective, step);

        if (rel < config.tolerance) {
            res.converged = true;
            break;
        }
    }

    res.f.values = std::move(f);
    res.objective = objective;
    return res;
}

std::vector<std::string> predict_names(const PredictionMatrix& f, const CharacterRoster& roster) {
    std::vector<std::string> names;
    names.reserve(f.n);
    for (int i = 0; i < f.n; ++i) {
        int best = 0;
        for (int j = 1; j < f.k; ++j) {
            if (f.values(i, j) > f.values(i, best)) {
                best = j;
            } else if (f.values(i, j) == f.values(i, best) &&
                       roster.prior[j] > roster.prior[best]) {
                best = j;  // tie on value: larger prior wins, else keep lower index
            }
        }
        names.push_back(roster.clusters[best].canonical);
    }
    return names;
}

std::string format_trace_csv(const std::vector<TracePoint>& trace) {
    std::string out = "iteration,objective,step\n";
    for (const TracePoint& t : trace) {
        out += std::to_string(t.iteration);
        out += ',';
        out += format_double(t.objective);
        out += ',';
        out += format_double(t.step);
        out += '\n';
    }
    return out;
}

}  // namespace namecast
