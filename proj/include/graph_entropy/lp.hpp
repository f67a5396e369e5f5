#pragma once

#include "graph_entropy/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace graph_entropy {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };
enum class Domain { NonNegative, Free };
enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

struct LpTerm {
    std::size_t var;
    Rational coeff;
};

struct LpRow {
    std::vector<LpTerm> terms;  // sorted by var, no zeros, no duplicates
    Relation rel = Relation::LessEqual;
    Rational rhs;
    std::string name;
};

/// An exact linear program over rationals. Rows are stored sparsely; the
/// dense add_constraint overload checks the coefficient vector length.
class LinearProgram {
public:
    explicit LinearProgram(std::size_t num_vars = 0, Sense sense = Sense::Maximize,
                           Domain default_domain = Domain::NonNegative);

    std::size_t num_vars() const { return domains_.size(); }
    std::size_t num_rows() const { return rows_.size(); }
    Sense sense() const { return sense_; }

    void set_objective(std::vector<Rational> coeffs);
    void set_objective_coeff(std::size_t var, Rational coeff);
    const std::vector<Rational>& objective() const { return objective_; }

    void set_domain(std::size_t var, Domain d);
    Domain domain(std::size_t var) const { return domains_.at(var); }

    void set_var_name(std::size_t var, std::string name);
    std::string var_name(std::size_t var) const;

    /// Dense row; throws std::invalid_argument on dimension mismatch.
    void add_constraint(const std::vector<Rational>& coeffs, Relation rel, Rational rhs,
                        std::string name = {});
    /// Sparse row; repeated indices are summed. Throws on out-of-range index.
    void add_constraint(std::vector<LpTerm> terms, Relation rel, Rational rhs,
                        std::string name = {});

    const std::vector<LpRow>& rows() const { return rows_; }

    /// Row activity a·x.
    Rational activity(std::size_t row, const std::vector<Rational>& x) const;

private:
    Sense sense_;
    std::vector<Rational> objective_;
    std::vector<Domain> domains_;
    std::vector<std::string> names_;
    std::vector<LpRow> rows_;
};

/// Primal assignment plus a dual vector with one entry per row.
///
/// Dual sign convention (standard Lagrangian): for a maximization, rows
/// with relation <= carry y >= 0, rows with >= carry y <= 0, equalities are
/// free, and A^T y >= c on non-negative columns (= c on free columns). For a
/// minimization every sign flips. At optimality c.x = b.y exactly.
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> primal;
    std::vector<Rational> dual;
    Rational objective;
    std::size_t pivots = 0;
};

/// Exact two-phase simplex with Bland's rule. When the program has more rows
/// than columns the dual program is solved instead and both certificates are
/// read back, which keeps the tableau small for the polymatroid programs.
LpSolution solve(const LinearProgram& lp);

/// Checks primal feasibility, dual feasibility, and objective equality, all
/// exactly. Returns false for non-optimal statuses.
bool verify_certificates(const LinearProgram& lp, const LpSolution& sol);

/// CPLEX-style LP text with rational coefficients written as fractions.
void write_lp_text(std::ostream& os, const LinearProgram& lp);

}  // namespace graph_entropy
