#include "pathlab/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>

namespace pathlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_csv(const CsvTable& table) {
    std::string out;
    for (const auto& [key, value] : table.metadata) {
        out += "# " + key + "=" + value + "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.parent_path() / (".tmp-" + path.filename().string());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f << text;
        if (!f.good()) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

void write_csv_atomic(const std::filesystem::path& path, const CsvTable& table) {
    write_text_atomic(path, render_csv(table));
}

CsvTable kernel_to_csv(const Kernel& kernel, const SpaceGrid& sg) {
    CsvTable t;
    t.metadata.emplace_back("provenance", provenance_name(kernel.provenance));
    t.metadata.emplace_back("t_start", format_double(kernel.t_start));
    t.metadata.emplace_back("t_end", format_double(kernel.t_end));
    t.metadata.emplace_back("dt", format_double(kernel.dt));
    t.metadata.emplace_back("dx", format_double(kernel.dx));
    t.columns = {"i_to", "x_to", "i_from", "x_from", "re", "im"};
    const std::size_t n = sg.n_points;
    t.rows.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex v = kernel.values(i, j);
            t.rows.push_back({static_cast<double>(i), sg.point(i),
                              static_cast<double>(j), sg.point(j),
                              v.real(), v.imag()});
        }
    }
    return t;
}

CsvTable wavefunction_to_csv(const Wavefunction& psi, const SpaceGrid& sg) {
    CsvTable t;
    t.metadata.emplace_back("time", format_double(psi.time));
    t.columns = {"i", "x", "re", "im", "abs2"};
    for (std::size_t i = 0; i < sg.n_points; ++i) {
        const Complex v = psi.values[static_cast<Eigen::Index>(i)];
        t.rows.push_back({static_cast<double>(i), sg.point(i), v.real(), v.imag(),
                          std::norm(v)});
    }
    return t;
}

CsvTable transition_to_csv(const TransitionQuantity& tq) {
    CsvTable t;
    t.metadata.emplace_back("x_initial", format_double(tq.x_initial));
    t.metadata.emplace_back("x_final", format_double(tq.x_final));
    t.metadata.emplace_back("kernel_re", format_double(tq.kernel_value.real()));
    t.metadata.emplace_back("kernel_im", format_double(tq.kernel_value.imag()));
    t.metadata.emplace_back("provenance", provenance_name(tq.provenance));
    t.columns = {"tau", "re_f", "im_f", "abs_f", "phase", "re_k", "im_k", "r_f_re", "r_f_im"};
    const ModulusPhase mp = modulus_and_phase(tq);
    for (std::size_t k = 0; k < tq.samples.size(); ++k) {
        const Complex f = tq.samples[k];
        const Complex r = f / tq.kernel_value;
        const double phase = mp.phase[k] ? *mp.phase[k]
                                         : std::numeric_limits<double>::quiet_NaN();
        t.rows.push_back({tq.tau[k], f.real(), f.imag(), mp.modulus[k], phase,
                          tq.kernel_value.real(), tq.kernel_value.imag(),
                          r.real(), r.imag()});
    }
    return t;
}

}  // namespace pathlab
