#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pathlab/transition.hpp"

namespace pathlab {

/// Plain CSV payload: '#'-prefixed metadata lines, one header row, numeric
/// cells formatted with full double precision. LF line endings.
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double v);

std::string render_csv(const CsvTable& table);

/// Writes via a temp file in the same directory followed by an atomic
/// rename, so failed runs never leave partial output.
void write_csv_atomic(const std::filesystem::path& path, const CsvTable& table);

void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Kernel matrix rows: i_to, x_to, i_from, x_from, re, im.
CsvTable kernel_to_csv(const Kernel& kernel, const SpaceGrid& sg);

/// Wavefunction rows: i, x, re, im, abs2.
CsvTable wavefunction_to_csv(const Wavefunction& psi, const SpaceGrid& sg);

/// Transition rows: tau, re_f, im_f, abs_f, phase, re_k, im_k, r_f_re, r_f_im.
/// The phase column is the unwrapped phase; NaN where undefined.
CsvTable transition_to_csv(const TransitionQuantity& tq);

}  // namespace pathlab
