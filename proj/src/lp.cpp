#include "graph_entropy/lp.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <type_traits>

namespace graph_entropy {

std::string to_string(LpStatus s)
{
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

LinearProgram::LinearProgram(std::size_t num_vars, Sense sense, Domain default_domain)
    : sense_(sense), objective_(num_vars), domains_(num_vars, default_domain), names_(num_vars)
{
}

void LinearProgram::set_objective(std::vector<Rational> coeffs)
{
    if (coeffs.size() != num_vars())
        throw std::invalid_argument("objective has " + std::to_string(coeffs.size()) +
                                    " coefficients, program has " + std::to_string(num_vars()) +
                                    " variables");
    objective_ = std::move(coeffs);
}

void LinearProgram::set_objective_coeff(std::size_t var, Rational coeff)
{
    if (var >= num_vars())
        throw std::invalid_argument("objective index out of range");
    objective_[var] = std::move(coeff);
}

void LinearProgram::set_domain(std::size_t var, Domain d)
{
    domains_.at(var) = d;
}

void LinearProgram::set_var_name(std::size_t var, std::string name)
{
    names_.at(var) = std::move(name);
}

std::string LinearProgram::var_name(std::size_t var) const
{
    if (!names_.at(var).empty())
        return names_[var];
    return "x" + std::to_string(var);
}

void LinearProgram::add_constraint(const std::vector<Rational>& coeffs, Relation rel, Rational rhs,
                                   std::string name)
{
    if (coeffs.size() != num_vars())
        throw std::invalid_argument("constraint has " + std::to_string(coeffs.size()) +
                                    " coefficients, program has " + std::to_string(num_vars()) +
                                    " variables");
    std::vector<LpTerm> terms;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (sgn(coeffs[j]) != 0)
            terms.push_back({j, coeffs[j]});
    add_constraint(std::move(terms), rel, std::move(rhs), std::move(name));
}

void LinearProgram::add_constraint(std::vector<LpTerm> terms, Relation rel, Rational rhs,
                                   std::string name)
{
    for (const auto& t : terms)
        if (t.var >= num_vars())
            throw std::invalid_argument("constraint references variable " + std::to_string(t.var) +
                                        " of " + std::to_string(num_vars()));
    std::sort(terms.begin(), terms.end(),
              [](const LpTerm& a, const LpTerm& b) { return a.var < b.var; });
    std::vector<LpTerm> merged;
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().var == t.var)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    std::erase_if(merged, [](const LpTerm& t) { return sgn(t.coeff) == 0; });
    rows_.push_back({std::move(merged), rel, std::move(rhs), std::move(name)});
}

Rational LinearProgram::activity(std::size_t row, const std::vector<Rational>& x) const
{
    Rational sum;
    for (const auto& t : rows_.at(row).terms)
        sum += t.coeff * x.at(t.var);
    return sum;
}

namespace {

// max c.x subject to rows, x >= 0.
struct StandardForm {
    std::size_t n = 0;
    std::vector<Rational> c;
    std::vector<LpRow> rows;
};

struct CoreResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;
    std::vector<Rational> y;
    Rational value;
    std::size_t pivots = 0;
};

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Arithmetic shims so one tableau serves both exact solves and the
// floating-point pass that proposes a starting basis.
int sign_of(const Rational& x)
{
    return sgn(x);
}

int sign_of(double x)
{
    constexpr double eps = 1e-7;
    return x > eps ? 1 : x < -eps ? -1 : 0;
}

void mul_into(Rational& out, const Rational& a, const Rational& b)
{
    mpq_mul(out.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
}

void mul_into(double& out, double a, double b)
{
    out = a * b;
}

void snap(Rational&) {}

void snap(double& x)
{
    if (sign_of(x) == 0)
        x = 0;
}

template <class Num>
Num convert(const Rational& x)
{
    if constexpr (std::is_same_v<Num, double>)
        return x.get_d();
    else
        return x;
}

// Dense tableau simplex with Bland's rule in both phases.
template <class Num>
class Tableau {
public:
    explicit Tableau(const StandardForm& sf) : n_(sf.n), m_(sf.rows.size()), sigma_(m_, 1)
    {
        std::size_t slack_count = 0, art_count = 0;
        for (const auto& row : sf.rows) {
            Relation rel = normalized(row);
            if (rel != Relation::Equal)
                ++slack_count;
            if (rel != Relation::LessEqual)
                ++art_count;
        }
        first_art_ = n_ + slack_count;
        cols_ = first_art_ + art_count;
        t_.assign(m_, std::vector<Num>(cols_, Num(0)));
        rhs_.resize(m_);
        basis_.resize(m_);
        unit_col_.resize(m_);

        std::size_t next_slack = n_, next_art = first_art_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = sf.rows[i];
            Relation rel = normalized(row);
            bool flip = needs_flip(row);
            sigma_[i] = flip ? -1 : 1;
            for (const auto& term : row.terms)
                t_[i][term.var] = convert<Num>(flip ? Rational(-term.coeff) : term.coeff);
            rhs_[i] = convert<Num>(flip ? Rational(-row.rhs) : row.rhs);
            if (rel == Relation::LessEqual) {
                t_[i][next_slack] = 1;
                basis_[i] = unit_col_[i] = next_slack++;
            } else {
                if (rel == Relation::GreaterEqual)
                    t_[i][next_slack++] = -1;
                t_[i][next_art] = 1;
                basis_[i] = unit_col_[i] = next_art++;
            }
        }
        cost_.assign(cols_, Num(0));
        for (std::size_t j = 0; j < n_; ++j)
            cost_[j] = convert<Num>(sf.c[j]);
    }

    const std::vector<std::size_t>& basis() const
    {
        return basis_;
    }

    bool needs_phase1() const
    {
        return first_art_ < cols_;
    }

    Num value() const
    {
        return value_;
    }

    // Prices the tableau for phase 1 (drive artificials out) or phase 2.
    void begin(int phase)
    {
        phase_ = phase;
        if (phase == 1) {
            std::vector<Num> phase1(cols_, Num(0));
            for (std::size_t j = first_art_; j < cols_; ++j)
                phase1[j] = -1;
            price(phase1);
        } else {
            price(cost_);
        }
    }

    enum class Step { Done, Unbounded, Limit };

    Step iterate(std::size_t max_pivots = npos)
    {
        const std::size_t limit = phase_ == 1 ? cols_ : first_art_;
        for (std::size_t done = 0;; ++done) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < limit; ++j)
                if (sign_of(d_[j]) < 0) {
                    enter = j;
                    break;
                }
            if (enter == npos)
                return Step::Done;

            std::size_t leave = npos;
            Num best, ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (sign_of(t_[i][enter]) <= 0)
                    continue;
                ratio = rhs_[i] / t_[i][enter];
                int c = leave == npos ? -1 : sign_of(Num(ratio - best));
                if (c < 0 || (c == 0 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == npos)
                return Step::Unbounded;
            if (done == max_pivots)
                return Step::Limit;
            pivot(leave, enter);
        }
    }

    LpStatus optimize()
    {
        if (needs_phase1()) {
            begin(1);
            iterate();
            if (sign_of(value_) < 0)
                return LpStatus::Infeasible;
            evict_artificials();
        }
        return finish();
    }

    LpStatus finish()
    {
        begin(2);
        return iterate() == Step::Done ? LpStatus::Optimal : LpStatus::Unbounded;
    }

    // Gauss-Jordan onto the given basis, largest pivot first in each column.
    bool rebase(const std::vector<std::size_t>& target)
    {
        std::vector<char> wanted(cols_, 0), basic(cols_, 0);
        for (std::size_t j : target) {
            if (j >= cols_)
                return false;
            wanted[j] = 1;
        }
        for (std::size_t b : basis_)
            basic[b] = 1;
        for (std::size_t j : target) {
            if (basic[j])
                continue;
            std::size_t row = npos;
            for (std::size_t i = 0; i < m_; ++i)
                if (!wanted[basis_[i]] && sign_of(t_[i][j]) != 0 &&
                    (row == npos || abs(t_[i][j]) > abs(t_[row][j])))
                    row = i;
            if (row == npos)
                return false;
            basic[basis_[row]] = 0;
            basic[j] = 1;
            pivot(row, j);
        }
        return true;
    }

    // rebase() followed by a feasibility check; phase 2 may continue after.
    bool crash(const std::vector<std::size_t>& target)
    {
        if (!rebase(target))
            return false;
        for (std::size_t i = 0; i < m_; ++i) {
            if (sign_of(rhs_[i]) < 0)
                return false;
            if (basis_[i] >= first_art_ && sign_of(rhs_[i]) != 0)
                return false;
        }
        evict_artificials();
        return true;
    }

    void evict_artificials()
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < first_art_)
                continue;
            for (std::size_t j = 0; j < first_art_; ++j)
                if (sign_of(t_[i][j]) != 0) {
                    pivot(i, j);
                    break;
                }
            // A row with no structural or slack entry is redundant; its
            // artificial stays basic at level zero.
        }
    }

    CoreResult result(LpStatus status) const
    {
        CoreResult res;
        res.status = status;
        res.pivots = pivots_;
        if (status != LpStatus::Optimal)
            return res;
        if constexpr (std::is_same_v<Num, Rational>) {
            res.x.assign(n_, Rational(0));
            for (std::size_t i = 0; i < m_; ++i)
                if (basis_[i] < n_)
                    res.x[basis_[i]] = rhs_[i];
            res.y.resize(m_);
            for (std::size_t i = 0; i < m_; ++i)
                res.y[i] = sigma_[i] < 0 ? Rational(-d_[unit_col_[i]]) : d_[unit_col_[i]];
            res.value = value_;
        }
        return res;
    }

private:
    // Rows are negated so that rhs >= 0, and ">= 0" rows become "<= 0" rows
    // that start with a slack in the basis.
    static bool needs_flip(const LpRow& row)
    {
        int s = sgn(row.rhs);
        return s < 0 || (s == 0 && row.rel == Relation::GreaterEqual);
    }

    static Relation normalized(const LpRow& row)
    {
        if (needs_flip(row)) {
            if (row.rel == Relation::LessEqual)
                return Relation::GreaterEqual;
            if (row.rel == Relation::GreaterEqual)
                return Relation::LessEqual;
        }
        return row.rel;
    }

    // Reduced costs d_j = c_B B^-1 A_j - c_j for the current basis.
    void price(const std::vector<Num>& c)
    {
        basic_cost_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i)
            basic_cost_[i] = c[basis_[i]];
        d_.assign(cols_, Num(0));
        value_ = 0;
        Num tmp;
        for (std::size_t i = 0; i < m_; ++i) {
            if (sign_of(basic_cost_[i]) == 0)
                continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (sign_of(t_[i][j]) == 0)
                    continue;
                mul_into(tmp, basic_cost_[i], t_[i][j]);
                d_[j] += tmp;
            }
            mul_into(tmp, basic_cost_[i], rhs_[i]);
            value_ += tmp;
        }
        for (std::size_t j = 0; j < cols_; ++j)
            d_[j] -= c[j];
    }

    void pivot(std::size_t r, std::size_t e)
    {
        ++pivots_;
        Num inv = Num(1) / t_[r][e];
        nz_.clear();
        for (std::size_t j = 0; j < cols_; ++j)
            if (sign_of(t_[r][j]) != 0) {
                t_[r][j] *= inv;
                nz_.push_back(j);
            } else {
                t_[r][j] = 0;
            }
        rhs_[r] *= inv;
        t_[r][e] = 1;

        Num f, tmp;
        auto eliminate = [&](std::vector<Num>& row, Num& rhs) {
            if (sign_of(row[e]) == 0)
                return;
            f = row[e];
            for (std::size_t j : nz_) {
                mul_into(tmp, f, t_[r][j]);
                row[j] -= tmp;
                snap(row[j]);
            }
            row[e] = 0;
            mul_into(tmp, f, rhs_[r]);
            rhs -= tmp;
            snap(rhs);
        };
        for (std::size_t i = 0; i < m_; ++i)
            if (i != r)
                eliminate(t_[i], rhs_[i]);
        if (!d_.empty())
            eliminate(d_, value_);
        basis_[r] = e;
    }

    std::size_t n_, m_, cols_ = 0, first_art_ = 0;
    std::vector<int> sigma_;
    std::vector<std::vector<Num>> t_;
    std::vector<Num> rhs_, cost_, d_, basic_cost_;
    std::vector<std::size_t> basis_, unit_col_, nz_;
    Num value_ = 0;
    int phase_ = 2;
    std::size_t pivots_ = 0;
};

// Floating-point simplex whose tableau is rebuilt from the original data
// every few dozen pivots. Returns an optimal basis, or nothing.
std::optional<std::vector<std::size_t>> approximate_basis(const StandardForm& sf)
{
    constexpr std::size_t refresh = 40;
    const std::size_t budget = 20 * (sf.rows.size() + sf.n);
    auto t = std::make_unique<Tableau<double>>(sf);
    int phase = t->needs_phase1() ? 1 : 2;
    t->begin(phase);
    for (std::size_t spent = 0; spent < budget; spent += refresh) {
        auto step = t->iterate(refresh);
        if (step == Tableau<double>::Step::Unbounded)
            return std::nullopt;
        if (step == Tableau<double>::Step::Done) {
            if (phase == 2)
                return t->basis();
            if (sign_of(t->value()) < 0)
                return std::nullopt;
            t->evict_artificials();
            phase = 2;
        }
        auto basis = t->basis();
        t = std::make_unique<Tableau<double>>(sf);
        if (!t->rebase(basis))
            return std::nullopt;
        t->begin(phase);
    }
    return std::nullopt;
}

CoreResult solve_core(const StandardForm& sf)
{
    // Large programs get a floating-point pass first. Its basis is only a
    // hint: the exact tableau re-derives it and must reach optimality itself.
    if (sf.rows.size() * sf.n >= 4096)
        if (auto hint = approximate_basis(sf)) {
            Tableau<Rational> exact(sf);
            if (exact.crash(*hint))
                return exact.result(exact.finish());
        }
    Tableau<Rational> exact(sf);
    return exact.result(exact.optimize());
}

// The dual of max c.x, Ax ~ b, x >= 0, rewritten as a maximization over
// non-negative variables: y_i >= 0 for <= rows, y_i = -z_i for >= rows,
// y_i = z+ - z- for equalities; constraints A^T y >= c; objective max -b.y.
CoreResult solve_via_dual(const StandardForm& sf)
{
    struct Col {
        std::size_t row;
        int sign;
    };
    std::vector<Col> cols;
    for (std::size_t i = 0; i < sf.rows.size(); ++i) {
        switch (sf.rows[i].rel) {
        case Relation::LessEqual: cols.push_back({i, 1}); break;
        case Relation::GreaterEqual: cols.push_back({i, -1}); break;
        case Relation::Equal:
            cols.push_back({i, 1});
            cols.push_back({i, -1});
            break;
        }
    }

    StandardForm dual;
    dual.n = cols.size();
    dual.c.resize(dual.n);
    std::vector<std::vector<LpTerm>> by_var(sf.n);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const auto& row = sf.rows[cols[k].row];
        dual.c[k] = cols[k].sign > 0 ? Rational(-row.rhs) : row.rhs;
        for (const auto& t : row.terms)
            by_var[t.var].push_back({k, cols[k].sign > 0 ? t.coeff : Rational(-t.coeff)});
    }
    dual.rows.resize(sf.n);
    for (std::size_t j = 0; j < sf.n; ++j) {
        dual.rows[j].terms = std::move(by_var[j]);
        dual.rows[j].rel = Relation::GreaterEqual;
        dual.rows[j].rhs = sf.c[j];
    }

    CoreResult inner = solve_core(dual);
    CoreResult res;
    res.pivots = inner.pivots;
    if (inner.status != LpStatus::Optimal) {
        res.status = inner.status;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.x.resize(sf.n);
    for (std::size_t j = 0; j < sf.n; ++j)
        res.x[j] = -inner.y[j];
    res.y.assign(sf.rows.size(), Rational(0));
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (cols[k].sign > 0)
            res.y[cols[k].row] += inner.x[k];
        else
            res.y[cols[k].row] -= inner.x[k];
    }
    res.value = -inner.value;
    return res;
}

}  // namespace

LpSolution solve(const LinearProgram& lp)
{
    // Column mapping: free variables split into a positive and negative part.
    std::vector<std::size_t> pos(lp.num_vars()), neg(lp.num_vars(), npos);
    StandardForm sf;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        pos[j] = sf.n++;
        if (lp.domain(j) == Domain::Free)
            neg[j] = sf.n++;
    }
    const bool minimize = lp.sense() == Sense::Minimize;
    sf.c.assign(sf.n, Rational(0));
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        Rational c = minimize ? Rational(-lp.objective()[j]) : lp.objective()[j];
        if (neg[j] != npos)
            sf.c[neg[j]] = -c;
        sf.c[pos[j]] = std::move(c);
    }
    sf.rows.reserve(lp.num_rows());
    for (const auto& row : lp.rows()) {
        LpRow r;
        r.rel = row.rel;
        r.rhs = row.rhs;
        for (const auto& t : row.terms) {
            r.terms.push_back({pos[t.var], t.coeff});
            if (neg[t.var] != npos)
                r.terms.push_back({neg[t.var], -t.coeff});
        }
        sf.rows.push_back(std::move(r));
    }

    CoreResult core;
    bool done = false;
    if (sf.rows.size() > sf.n) {
        core = solve_via_dual(sf);
        // A non-optimal dual does not say which of infeasible/unbounded
        // holds for the primal; the primal route settles it.
        done = core.status == LpStatus::Optimal;
    }
    if (!done)
        core = solve_core(sf);

    LpSolution sol;
    sol.status = core.status;
    sol.pivots = core.pivots;
    if (core.status != LpStatus::Optimal)
        return sol;

    sol.primal.resize(lp.num_vars());
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        sol.primal[j] = core.x[pos[j]];
        if (neg[j] != npos)
            sol.primal[j] -= core.x[neg[j]];
    }
    sol.dual = std::move(core.y);
    if (minimize)
        for (auto& y : sol.dual)
            y = -y;
    sol.objective = 0;
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        sol.objective += lp.objective()[j] * sol.primal[j];
    return sol;
}

bool verify_certificates(const LinearProgram& lp, const LpSolution& sol)
{
    if (sol.status != LpStatus::Optimal)
        return false;
    if (sol.primal.size() != lp.num_vars() || sol.dual.size() != lp.num_rows())
        return false;

    const bool maximize = lp.sense() == Sense::Maximize;
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        if (lp.domain(j) == Domain::NonNegative && sgn(sol.primal[j]) < 0)
            return false;

    std::vector<Rational> aty(lp.num_vars());
    Rational dual_value;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const auto& row = lp.rows()[i];
        Rational act = lp.activity(i, sol.primal);
        int ys = sgn(sol.dual[i]);
        switch (row.rel) {
        case Relation::LessEqual:
            if (act > row.rhs || (maximize ? ys < 0 : ys > 0))
                return false;
            break;
        case Relation::GreaterEqual:
            if (act < row.rhs || (maximize ? ys > 0 : ys < 0))
                return false;
            break;
        case Relation::Equal:
            if (act != row.rhs)
                return false;
            break;
        }
        if (ys != 0) {
            for (const auto& t : row.terms)
                aty[t.var] += t.coeff * sol.dual[i];
            dual_value += row.rhs * sol.dual[i];
        }
    }

    Rational primal_value;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
        const auto& c = lp.objective()[j];
        primal_value += c * sol.primal[j];
        if (lp.domain(j) == Domain::Free) {
            if (aty[j] != c)
                return false;
        } else if (maximize ? aty[j] < c : aty[j] > c) {
            return false;
        }
    }
    return primal_value == dual_value && primal_value == sol.objective;
}

namespace {

void write_terms(std::ostream& os, const LinearProgram& lp, const std::vector<LpTerm>& terms)
{
    if (terms.empty()) {
        os << " 0";
        return;
    }
    for (const auto& t : terms) {
        os << (sgn(t.coeff) < 0 ? " - " : " + ");
        Rational mag = abs(t.coeff);
        if (mag != 1)
            os << to_string(mag) << ' ';
        os << lp.var_name(t.var);
    }
}

}  // namespace

void write_lp_text(std::ostream& os, const LinearProgram& lp)
{
    os << (lp.sense() == Sense::Maximize ? "Maximize\n" : "Minimize\n");
    std::vector<LpTerm> obj;
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        if (sgn(lp.objective()[j]) != 0)
            obj.push_back({j, lp.objective()[j]});
    os << " obj:";
    write_terms(os, lp, obj);
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const auto& row = lp.rows()[i];
        os << ' ' << (row.name.empty() ? "c" + std::to_string(i + 1) : row.name) << ':';
        write_terms(os, lp, row.terms);
        switch (row.rel) {
        case Relation::LessEqual: os << " <= "; break;
        case Relation::GreaterEqual: os << " >= "; break;
        case Relation::Equal: os << " = "; break;
        }
        os << to_string(row.rhs) << '\n';
    }
    bool any_free = false;
    for (std::size_t j = 0; j < lp.num_vars(); ++j)
        any_free = any_free || lp.domain(j) == Domain::Free;
    if (any_free) {
        os << "Bounds\n";
        for (std::size_t j = 0; j < lp.num_vars(); ++j)
            if (lp.domain(j) == Domain::Free)
                os << ' ' << lp.var_name(j) << " free\n";
    }
    os << "End\n";
}

}  // namespace graph_entropy
