#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "arbo/control.hpp"

namespace arbo {

constexpr const char* kSpecVersion = "1.0";

std::string format_double(double v);  // %.17g

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);
    const std::string& str() const { return out_; }

private:
    std::string out_;
};

std::string trajectory_csv(const StateTrajectory& x);
std::string controls_csv(const ControlTrajectory& u);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// NaN and infinities become null.
nlohmann::json number(double v);

}  // namespace arbo
