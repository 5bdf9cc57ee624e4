#include "arbo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace arbo {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) { row(header); }

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ += ',';
        out_ += format_double(values[i]);
    }
    out_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ',';
        out_ += cells[i];
    }
    out_ += '\n';
}

std::string trajectory_csv(const StateTrajectory& x) {
    std::vector<std::string> h = {"t"};
    for (auto n : state_names()) h.emplace_back(n);
    CsvWriter w(h);
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        std::vector<double> r = {x.grid.t(static_cast<int>(i))};
        r.insert(r.end(), x.values[i].begin(), x.values[i].end());
        w.row(r);
    }
    return w.str();
}

std::string controls_csv(const ControlTrajectory& u) {
    CsvWriter w({"t", "u1", "u2", "u3", "u4", "u5"});
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        std::vector<double> r = {u.grid.t(static_cast<int>(i))};
        r.insert(r.end(), u.values[i].begin(), u.values[i].end());
        w.row(r);
    }
    return w.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::parse, "cannot write '" + path + "'");
    f << content;
    if (!f) throw Error(ErrorKind::parse, "write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::parse, "cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

nlohmann::json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace arbo
