#include "stackgame/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>
#include <vector>

namespace stackgame {

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, end);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void bail(int line, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double number(std::string_view raw, int line, const std::string& key) {
    auto v = trim(raw);
    double out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        bail(line, "expected a number for '" + key + "', got '" + std::string(v) + "'");
    return out;
}

template <typename Int>
Int integer(std::string_view raw, int line, const std::string& key) {
    auto v = trim(raw);
    Int out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        bail(line, "expected an integer for '" + key + "', got '" + std::string(v) + "'");
    return out;
}

std::vector<double> number_list(std::string_view raw, int line,
                                const std::string& key) {
    std::vector<double> out;
    std::size_t start = 0;
    std::string text(raw);
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto piece = comma == std::string::npos
                         ? std::string_view(text).substr(start)
                         : std::string_view(text).substr(start, comma - start);
        out.push_back(number(piece, line, key));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

QuadraticIncentive incentive(std::string_view raw, int line, const std::string& key) {
    auto parts = number_list(raw, line, key);
    if (parts.size() != 2) bail(line, "'" + key + "' needs exactly xi1,xi2");
    return {parts[0], parts[1]};
}

struct PendingDevice {
    std::optional<TrueSatisfaction> sat;
    std::optional<QuadraticIncentive> g0, g1;
    int opened_at = 0;
};

void flush_device(std::optional<PendingDevice>& pending, Scenario& s) {
    if (!pending) return;
    if (!pending->sat) bail(pending->opened_at, "device block is missing 'sat'");
    if (!pending->g0) bail(pending->opened_at, "device block is missing 'gamma0'");
    if (!pending->g1) bail(pending->opened_at, "device block is missing 'gamma1'");
    s.devices.push_back({*pending->sat, *pending->g0, *pending->g1});
    pending.reset();
}

TrueSatisfaction satisfaction(std::string_view raw, int line) {
    auto v = trim(raw);
    if (v.rfind("log:", 0) == 0) {
        return LogSatisfaction{number(v.substr(4), line, "sat")};
    }
    if (v.rfind("poly:", 0) == 0) {
        auto coeffs = number_list(v.substr(5), line, "sat");
        if (coeffs.empty()) bail(line, "'poly:' needs at least one coefficient");
        return SatisfactionPoly(coeffs);
    }
    bail(line, "unknown satisfaction form '" + std::string(v) +
                   "' (use log:<a> or poly:<a0>,<a1>,...)");
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    std::optional<PendingDevice> device;
    int line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = nl == std::string_view::npos ? text.substr(pos)
                                                : text.substr(pos, nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        auto lineview = trim(raw);
        if (lineview.empty()) continue;

        if (lineview.front() == '[') {
            if (lineview == "[device]") {
                flush_device(device, s);
                device = PendingDevice{};
                device->opened_at = line_no;
                continue;
            }
            bail(line_no, "unknown section '" + std::string(lineview) + "'");
        }

        auto eq = lineview.find('=');
        if (eq == std::string_view::npos)
            bail(line_no, "expected 'key = value'");
        std::string key{trim(lineview.substr(0, eq))};
        auto value = trim(lineview.substr(eq + 1));

        if (key == "sat" || key == "gamma0" || key == "gamma1") {
            if (!device)
                bail(line_no, "device key '" + key + "' outside a [device] block");
            if (key == "sat")
                device->sat = satisfaction(value, line_no);
            else if (key == "gamma0")
                device->g0 = incentive(value, line_no, key);
            else
                device->g1 = incentive(value, line_no, key);
            continue;
        }
        if (device)
            bail(line_no, "unknown device key '" + key + "'");

        if (key == "p")
            s.params.price = number(value, line_no, key);
        else if (key == "ybar")
            s.params.ybar = number(value, line_no, key);
        else if (key == "vbar")
            s.params.vbar = number(value, line_no, key);
        else if (key == "beta")
            s.params.beta = number(value, line_no, key);
        else if (key == "objective") {
            if (value == "revdecoup")
                s.objective = RevenueDecoupling{};
            else if (value.rfind("demresp:", 0) == 0)
                s.objective = DemandResponse{number(value.substr(8), line_no, key)};
            else
                bail(line_no, "objective must be revdecoup or demresp:<yref>");
        } else if (key == "max_iters")
            s.max_iters = integer<int>(value, line_no, key);
        else if (key == "epsilon")
            s.epsilon = number(value, line_no, key);
        else if (key == "seed")
            s.seed = integer<std::uint64_t>(value, line_no, key);
        else if (key == "fit_tol")
            s.fit_tol = number(value, line_no, key);
        else if (key == "tol")
            s.tol = number(value, line_no, key);
        else
            bail(line_no, "unknown key '" + key + "'");
    }
    flush_device(device, s);
    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path.string() + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_scenario(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string render_scenario(const Scenario& scenario) {
    std::ostringstream out;
    out << "p = " << format_double(scenario.params.price) << '\n'
        << "ybar = " << format_double(scenario.params.ybar) << '\n'
        << "vbar = " << format_double(scenario.params.vbar) << '\n'
        << "beta = " << format_double(scenario.params.beta) << '\n';
    if (const auto* dr = std::get_if<DemandResponse>(&scenario.objective))
        out << "objective = demresp:" << format_double(dr->yref) << '\n';
    else
        out << "objective = revdecoup\n";
    out << "max_iters = " << scenario.max_iters << '\n'
        << "epsilon = " << format_double(scenario.epsilon) << '\n'
        << "seed = " << scenario.seed << '\n'
        << "fit_tol = " << format_double(scenario.fit_tol) << '\n'
        << "tol = " << format_double(scenario.tol) << '\n';
    for (const auto& dev : scenario.devices) {
        out << "\n[device]\n";
        if (const auto* log = std::get_if<LogSatisfaction>(&dev.satisfaction)) {
            out << "sat = log:" << format_double(log->scale) << '\n';
        } else {
            const auto& c = std::get<SatisfactionPoly>(dev.satisfaction).coefficients();
            out << "sat = poly:";
            for (std::size_t i = 0; i < c.size(); ++i)
                out << (i ? "," : "") << format_double(c[i]);
            out << '\n';
        }
        out << "gamma0 = " << format_double(dev.bootstrap0.xi1) << ','
            << format_double(dev.bootstrap0.xi2) << '\n'
            << "gamma1 = " << format_double(dev.bootstrap1.xi1) << ','
            << format_double(dev.bootstrap1.xi2) << '\n';
    }
    return out.str();
}

}  // namespace stackgame
