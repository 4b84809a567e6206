#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace srp {

enum class VarKind { binary, continuous };

struct VarDef {
    std::string name;
    VarKind kind = VarKind::binary;
    double lb = 0.0;
    double ub = 1.0;
};

enum class Sense { le, eq, ge };

// Families a model row can belong to. c1..c8 mirror the plan-level
// constraint tags; lin marks product-linearization rows, cbeta the
// return-leg detector rows of the dispatch extension.
enum class RowLabel { c1, c2, c3, c4, c5, c6, c7, c8, lin, cbeta };

const char* to_string(RowLabel label);

struct LinTerm {
    int var = 0;
    double coeff = 0.0;
};

struct LinRow {
    std::vector<LinTerm> terms;
    Sense sense = Sense::le;
    double rhs = 0.0;
    RowLabel label = RowLabel::c1;
};

// A linear program over named variables: minimize `objective` subject to
// `rows` and the variable bounds/kinds. Deterministic construction order;
// no solver attached -- the IR is built for emission and for the internal
// exact and annealing paths to agree against.
struct ModelIR {
    std::vector<VarDef> vars;
    std::vector<LinRow> rows;
    std::vector<LinTerm> objective;

    int add_var(std::string name, VarKind kind, double lb, double ub);
    void add_row(LinRow row);

    int var_count() const { return static_cast<int>(vars.size()); }
    int row_count() const { return static_cast<int>(rows.size()); }
};

double eval_terms(const std::vector<LinTerm>& terms, const std::vector<double>& x);
bool row_satisfied(const LinRow& row, const std::vector<double>& x, double tol = 1e-9);
bool assignment_feasible(const ModelIR& ir, const std::vector<double>& x, double tol = 1e-9);

// CPLEX-style LP text: Minimize / Subject To / Bounds / Binary / End, rows
// named <label>_<ordinal>. Output is deterministic for a fixed model.
void emit_lp(std::ostream& out, const ModelIR& ir, const std::string& problem_name = "srp");

}  // namespace srp
