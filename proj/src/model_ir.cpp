#include "srp/model_ir.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace srp {

const char* to_string(RowLabel label) {
    switch (label) {
        case RowLabel::c1: return "C1";
        case RowLabel::c2: return "C2";
        case RowLabel::c3: return "C3";
        case RowLabel::c4: return "C4";
        case RowLabel::c5: return "C5";
        case RowLabel::c6: return "C6";
        case RowLabel::c7: return "C7";
        case RowLabel::c8: return "C8";
        case RowLabel::lin: return "LIN";
        case RowLabel::cbeta: return "CBETA";
    }
    return "?";
}

int ModelIR::add_var(std::string name, VarKind kind, double lb, double ub) {
    vars.push_back({std::move(name), kind, lb, ub});
    return static_cast<int>(vars.size()) - 1;
}

void ModelIR::add_row(LinRow row) {
    for (const LinTerm& t : row.terms)
        if (t.var < 0 || t.var >= var_count())
            throw std::out_of_range("ModelIR::add_row: term references unknown variable " +
                                    std::to_string(t.var));
    rows.push_back(std::move(row));
}

double eval_terms(const std::vector<LinTerm>& terms, const std::vector<double>& x) {
    double v = 0.0;
    for (const LinTerm& t : terms) v += t.coeff * x[t.var];
    return v;
}

bool row_satisfied(const LinRow& row, const std::vector<double>& x, double tol) {
    double lhs = eval_terms(row.terms, x);
    switch (row.sense) {
        case Sense::le: return lhs <= row.rhs + tol;
        case Sense::eq: return std::fabs(lhs - row.rhs) <= tol;
        case Sense::ge: return lhs >= row.rhs - tol;
    }
    return false;
}

bool assignment_feasible(const ModelIR& ir, const std::vector<double>& x, double tol) {
    if (x.size() != ir.vars.size())
        throw std::invalid_argument("assignment_feasible: assignment size does not match model");
    for (const LinRow& row : ir.rows)
        if (!row_satisfied(row, x, tol)) return false;
    return true;
}

namespace {

// Numbers in LP text: full precision, no trailing noise for integers.
std::string lp_num(double v) {
    if (v == static_cast<long long>(v) && std::fabs(v) < 1e15)
        return std::to_string(static_cast<long long>(v));
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

class LineWrapper {
public:
    explicit LineWrapper(std::ostream& out) : out_(out) {}
    void piece(const std::string& s) {
        if (width_ + s.size() + 1 > 240) {
            out_ << "\n   ";
            width_ = 3;
        }
        out_ << ' ' << s;
        width_ += s.size() + 1;
    }
    void finish() {
        out_ << '\n';
        width_ = 0;
    }

private:
    std::ostream& out_;
    size_t width_ = 0;
};

void emit_terms(LineWrapper& line, const std::vector<LinTerm>& terms, const ModelIR& ir) {
    bool first = true;
    for (const LinTerm& t : terms) {
        if (t.coeff == 0.0) continue;
        std::string piece;
        if (t.coeff < 0.0)
            piece = "- ";
        else if (!first)
            piece = "+ ";
        double mag = std::fabs(t.coeff);
        if (mag != 1.0) piece += lp_num(mag) + " ";
        piece += ir.vars[t.var].name;
        line.piece(piece);
        first = false;
    }
    if (first) line.piece("0");
}

}  // namespace

void emit_lp(std::ostream& out, const ModelIR& ir, const std::string& problem_name) {
    out << "\\ " << problem_name << "\n";
    out << "Minimize\n obj:";
    LineWrapper line(out);
    emit_terms(line, ir.objective, ir);
    line.finish();

    out << "Subject To\n";
    std::vector<int> label_ordinal(static_cast<int>(RowLabel::cbeta) + 1, 0);
    for (const LinRow& row : ir.rows) {
        int ordinal = ++label_ordinal[static_cast<int>(row.label)];
        out << ' ' << to_string(row.label) << '_' << ordinal << ':';
        emit_terms(line, row.terms, ir);
        const char* rel = row.sense == Sense::le ? "<=" : row.sense == Sense::eq ? "=" : ">=";
        line.piece(std::string(rel) + " " + lp_num(row.rhs));
        line.finish();
    }

    bool any_bounds = false;
    for (const VarDef& v : ir.vars) {
        if (v.kind != VarKind::continuous) continue;
        if (!any_bounds) {
            out << "Bounds\n";
            any_bounds = true;
        }
        out << ' ' << lp_num(v.lb) << " <= " << v.name << " <= " << lp_num(v.ub) << '\n';
    }

    bool any_binary = false;
    for (const VarDef& v : ir.vars) {
        if (v.kind != VarKind::binary) continue;
        if (!any_binary) {
            out << "Binary\n";
            any_binary = true;
        }
        out << ' ' << v.name << '\n';
    }
    out << "End\n";
}

}  // namespace srp
