#pragma once

#include <string>

#include "colsel/mat.hpp"
#include "colsel/matrix.hpp"

namespace colsel {

enum class Orientation {
    columns_are_features,  // file cell (i, j) is observation i of feature j
    rows_are_features      // each file row is one feature; loader transposes
};

enum class NormalizationPolicy {
    normalize,           // scale every column to unit norm
    require_normalized   // reject columns whose norm is off 1 by > 1e-6
};

struct DatasetHandle {
    std::string path;
    Orientation orientation = Orientation::columns_are_features;
    NormalizationPolicy policy = NormalizationPolicy::normalize;
};

/// Loads a rectangular numeric CSV (UTF-8, '.' decimal point, ',' separator,
/// no locale handling). A non-numeric first row is treated as a header and
/// skipped; blank lines are ignored. Line/column numbers in errors are
/// 1-based file coordinates.
/// Throws IoError, RaggedRows, NonNumericCell, EmptyMatrix, and the
/// normalization errors ZeroColumn / NotNormalized / NonFiniteEntry.
ColumnMatrix load_csv(const DatasetHandle& handle);

/// Raw CSV -> Mat, header auto-detection and validation only.
Mat load_csv_raw(const std::string& path);

/// Writes `m` as CSV with 17 significant digits (lossless for doubles).
/// Throws IoError.
void write_csv(const Mat& m, const std::string& path);

/// Formats one double the way write_csv does ("%.17g").
std::string format_double(double v);

}  // namespace colsel
