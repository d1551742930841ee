#include "stackgame/reporting.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stackgame/scenario_io.hpp"

namespace stackgame {

namespace {

std::string opt(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::ofstream open_for_write(const std::filesystem::path& p, bool force) {
    if (!force && std::filesystem::exists(p))
        throw std::runtime_error(p.string() + " already exists; enable force to overwrite");
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

void write_iterations(const RunResult& result, const std::filesystem::path& path,
                      std::size_t n_alpha, std::size_t n_relerr, bool force) {
    auto out = open_for_write(path, force);
    out << "iter,device,xi1,xi2,y_true,y_hat";
    for (std::size_t i = 0; i < n_alpha; ++i) out << ",alpha_" << i;
    out << ",fit_method,fit_residual,v_d,y_d,J_L_true";
    for (std::size_t i = 0; i < n_relerr; ++i) out << ",relerr_alpha_" << i;
    out << '\n';

    for (const auto& rec : result.records) {
        for (std::size_t d = 0; d < rec.devices.size(); ++d) {
            const auto& round = rec.devices[d];
            out << rec.iter << ',' << d;
            out << ',' << (round.issued ? format_double(round.issued->xi1) : "");
            out << ',' << (round.issued ? format_double(round.issued->xi2) : "");
            out << ',' << opt(round.y_true) << ',' << opt(round.y_hat);
            for (std::size_t i = 0; i < n_alpha; ++i) {
                out << ',';
                if (round.fit && i < round.fit->alpha.size())
                    out << format_double(round.fit->alpha[i]);
            }
            out << ',';
            if (round.fit)
                out << (round.fit->method == FitMethod::range_test
                            ? "range_test"
                            : "kkt_residual");
            out << ',' << (round.fit ? format_double(round.fit->residual) : "");
            out << ',' << (round.desired ? format_double(round.desired->payment) : "");
            out << ','
                << (round.desired ? format_double(round.desired->consumption) : "");
            out << ',' << opt(round.leader_value);
            for (std::size_t i = 0; i < n_relerr; ++i) {
                out << ',';
                if (i < round.relerr.size()) out << format_double(round.relerr[i]);
            }
            out << '\n';
        }
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_summary(const RunResult& result, const Scenario& scenario,
                   const std::filesystem::path& path, bool force) {
    auto out = open_for_write(path, force);
    out << "termination: " << to_string(result.termination) << '\n';
    out << "rounds: " << result.records.size() << '\n';
    out << "devices: " << scenario.devices.size() << '\n';
    if (result.records.back().aggregate)
        out << "final_aggregate: "
            << format_double(*result.records.back().aggregate) << '\n';
    if (!result.detail.empty()) out << "detail: " << result.detail << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_relerr(const RunResult& result, const std::filesystem::path& path,
                  std::size_t n_relerr, bool force) {
    auto out = open_for_write(path, force);
    out << "iter,device";
    for (std::size_t i = 0; i < n_relerr; ++i) out << ",relerr_alpha_" << i;
    out << '\n';
    for (const auto& rec : result.records) {
        for (std::size_t d = 0; d < rec.devices.size(); ++d) {
            const auto& round = rec.devices[d];
            if (round.relerr.empty()) continue;
            out << rec.iter << ',' << d;
            for (std::size_t i = 0; i < n_relerr; ++i) {
                out << ',';
                if (i < round.relerr.size()) out << format_double(round.relerr[i]);
            }
            out << '\n';
        }
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_satisfaction(const RunResult& result, const Scenario& scenario,
                        const std::filesystem::path& path, bool force) {
    // last fitted coefficients per device, if any round produced them
    std::vector<std::optional<SatisfactionPoly>> last(scenario.devices.size());
    for (auto it = result.records.rbegin(); it != result.records.rend(); ++it) {
        for (std::size_t d = 0; d < it->devices.size(); ++d) {
            if (!last[d] && it->devices[d].fit)
                last[d] = it->devices[d].fit->poly();
        }
    }

    auto out = open_for_write(path, force);
    out << "y";
    for (std::size_t d = 0; d < scenario.devices.size(); ++d)
        out << ",f_true_" << d << ",f_hat_" << d;
    out << '\n';
    const double step = scenario.params.ybar / 2000.0;
    for (int i = 0; i <= 200; ++i) {
        double y = static_cast<double>(i) * step;
        out << format_double(y);
        for (std::size_t d = 0; d < scenario.devices.size(); ++d) {
            out << ','
                << format_double(
                       satisfaction_value(scenario.devices[d].satisfaction, y));
            out << ',';
            if (last[d]) out << format_double(last[d]->value(y));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void emit_records(const RunResult& result, const Scenario& scenario,
                  const std::filesystem::path& out_dir, bool force) {
    if (result.records.empty())
        throw std::logic_error("no iteration records to report");
    std::filesystem::create_directories(out_dir);

    std::size_t n_alpha = 0, n_relerr = 0;
    for (const auto& rec : result.records) {
        for (const auto& round : rec.devices) {
            if (round.fit)
                n_alpha = std::max(n_alpha, round.fit->alpha.size());
            n_relerr = std::max(n_relerr, round.relerr.size());
        }
    }

    write_iterations(result, out_dir / "iterations.csv", n_alpha, n_relerr, force);
    write_summary(result, scenario, out_dir / "summary.txt", force);
    write_relerr(result, out_dir / "plotdata_relerr.csv", n_relerr, force);
    write_satisfaction(result, scenario, out_dir / "plotdata_satisfaction.csv",
                       force);
}

}  // namespace stackgame
