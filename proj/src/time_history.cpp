#include "crashsuite/time_history.hpp"

#include "crashsuite/error.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace crashsuite {

namespace {

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\"";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::MissingOutput, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

ColumnMapping ColumnMapping::parse(std::string_view text)
{
    ColumnMapping m;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        const auto line = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        ++line_no;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorKind::InvalidArgument, fmt::format("column mapping line {}: expected key = value", line_no));
        const auto key = trim(line.substr(0, eq));
        const std::string value(trim(line.substr(eq + 1)));
        if (key == "time")
            m.time = value;
        else if (key == "contact_force")
            m.contact_force = value;
        else if (key == "impactor_disp")
            m.impactor_disp = value;
        else if (key == "internal_energy")
            m.internal_energy = value;
        else if (key == "kinetic_energy")
            m.kinetic_energy = value;
        else
            throw Error(ErrorKind::InvalidArgument, fmt::format("column mapping line {}: unknown channel '{}'", line_no, key));
    }
    return m;
}

ColumnMapping ColumnMapping::from_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot open column mapping " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

TimeHistory parse_time_history(std::string_view csv, const ColumnMapping& columns)
{
    const std::array<const std::string*, 5> wanted{&columns.time, &columns.contact_force, &columns.impactor_disp,
                                                   &columns.internal_energy, &columns.kinetic_energy};
    std::array<std::size_t, 5> index{};
    bool have_header = false;
    std::size_t min_fields = 0;

    TimeHistory th;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < csv.size()) {
        const auto end = csv.find('\n', start);
        const auto raw = csv.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? csv.size() : end + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;

        const auto fields = split(line, ',');
        if (!have_header) {
            for (std::size_t c = 0; c < wanted.size(); ++c) {
                std::size_t k = 0;
                while (k < fields.size() && fields[k] != *wanted[c])
                    ++k;
                if (k == fields.size())
                    throw Error(ErrorKind::MissingColumn,
                                fmt::format("line {}: header lacks column '{}'", line_no, *wanted[c]));
                index[c] = k;
                min_fields = std::max(min_fields, k + 1);
            }
            have_header = true;
            continue;
        }

        if (fields.size() < min_fields)
            throw Error(ErrorKind::MalformedNumber,
                        fmt::format("line {}: expected at least {} fields, got {}", line_no, min_fields, fields.size()));
        std::array<double, 5> v{};
        for (std::size_t c = 0; c < wanted.size(); ++c) {
            const auto f = fields[index[c]];
            const auto* first = f.data();
            const auto* last = f.data() + f.size();
            if (!f.empty() && *first == '+')
                ++first;
            const auto [ptr, ec] = std::from_chars(first, last, v[c]);
            if (f.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v[c]))
                throw Error(ErrorKind::MalformedNumber,
                            fmt::format("line {}: column '{}' has malformed value '{}'", line_no, *wanted[c], f));
        }
        if (th.samples.empty() && v[0] < 0.0)
            throw Error(ErrorKind::NonMonotoneTime, fmt::format("line {}: negative start time {}", line_no, v[0]));
        if (!th.samples.empty() && !(v[0] > th.samples.back().time_ms))
            throw Error(ErrorKind::NonMonotoneTime,
                        fmt::format("line {}: time {} does not increase past {}", line_no, v[0], th.samples.back().time_ms));
        th.samples.push_back({v[0], v[1], v[2], v[3], v[4]});
    }
    if (!have_header)
        throw Error(ErrorKind::MissingColumn, "time history has no header row");
    if (th.samples.size() < 2)
        throw Error(ErrorKind::DegenerateSeries,
                    fmt::format("time history needs at least 2 samples, got {}", th.samples.size()));
    return th;
}

TimeHistory read_time_history(const std::filesystem::path& path, const ColumnMapping& columns)
{
    return parse_time_history(slurp(path), columns);
}

std::string write_time_history(const TimeHistory& th)
{
    std::string out = "time,contact_force,impactor_disp,internal_energy,kinetic_energy\n";
    for (const auto& s : th.samples)
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{}\n", s.time_ms, s.contact_force_kN, s.impactor_disp_mm,
                       s.internal_energy_J, s.kinetic_energy_J);
    return out;
}

SimulationRecord extract_scalars(const TimeHistory& th, const MassReport& mass,
                                 std::optional<double> constraint_limit_mm, const LoadWindow& window)
{
    if (th.samples.size() < 2)
        throw Error(ErrorKind::DegenerateSeries, "time history needs at least 2 samples");
    if (!(mass.total_kg > 0.0))
        throw Error(ErrorKind::NonPositiveMass, "structural mass must be positive");

    std::vector<double> t, f;
    t.reserve(th.samples.size());
    f.reserve(th.samples.size());
    for (const auto& s : th.samples) {
        t.push_back(s.time_ms);
        f.push_back(s.contact_force_kN);
    }
    const auto stats = force_statistics(t, f, window);

    const double contact_disp = th.samples[stats.onset_index].impactor_disp_mm;
    double delta = 0.0;
    for (const auto& s : th.samples)
        delta = std::max(delta, s.impactor_disp_mm - contact_disp);

    SimulationRecord rec{th,
                         delta,
                         stats.peak_kN,
                         stats.mean_kN,
                         th.samples.back().internal_energy_J,
                         mass.total_kg,
                         stats.onset_index,
                         !constraint_limit_mm || delta <= *constraint_limit_mm};
    return rec;
}

}  // namespace crashsuite
