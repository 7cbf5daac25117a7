#pragma once

#include <string>
#include <vector>

#include "nlcolloc/study.hpp"

namespace nlcolloc {

/// One expected (error, rate) pair; rate is NaN on the first refinement row.
struct ExpectedCell {
    double error = 0.0;
    double rate = 0.0;
};

struct ReferenceColumn {
    std::string rule;
    std::vector<ExpectedCell> cells;
};

enum class TableKind { manufactured, ac, self_convergence };

/// A bundled reference study: configuration plus the pinned expected values
/// and the tolerances it is gated at.
struct ReferenceTable {
    int id = 0;
    Scheme scheme = Scheme::shifted_symmetric;
    int dimension = 1;
    TableKind kind = TableKind::manufactured;
    std::vector<double> h_rows;   // displayed refinement levels
    std::vector<double> h_solve;  // solved levels (self-convergence adds one finer)
    std::vector<ReferenceColumn> columns;
    double error_rtol = 0.01;
    double rate_atol = 0.05;
    bool gate_errors = true;  // 2D gates rates only
};

constexpr int kReferenceTableCount = 7;

/// Bundled tables 1..7; throws std::invalid_argument outside that range.
const ReferenceTable& reference_table(int id);

struct CellComparison {
    int column = 0;
    int row = 0;
    double got_error = 0.0, expected_error = 0.0;
    double got_rate = 0.0, expected_rate = 0.0;
    bool error_ok = true, rate_ok = true;
};

struct TableRunResult {
    int id = 0;
    std::vector<ConvergenceTable> computed;  // one per column
    std::vector<CellComparison> cells;
    bool pass = true;
};

TableRunResult run_reference_table(int id, int jobs = 1);

/// Console rendering of a finished run, one block per column plus a
/// pass/fail line per gated quantity.
std::string format_table_result(const TableRunResult& result);

}  // namespace nlcolloc
