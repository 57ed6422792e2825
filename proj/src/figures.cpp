#include "antidamp/figures.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "antidamp/report.hpp"
#include "antidamp/spectrum.hpp"

namespace antidamp {

std::optional<FigureId> parse_figure_id(std::string_view text) {
    std::string s;
    for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s.rfind("fig", 0) == 0) s.erase(0, 3);
    int n = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), n);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || n < 1 || n > 9) return std::nullopt;
    return static_cast<FigureId>(n);
}

std::string to_string(FigureId id) { return "fig" + std::to_string(static_cast<int>(id)); }

FigureKind figure_kind(FigureId id) {
    switch (id) {
        case FigureId::Fig2:
        case FigureId::Fig8:
        case FigureId::Fig9: return FigureKind::Phase;
        case FigureId::Fig5: return FigureKind::AsymptoticU;
        case FigureId::Fig6: return FigureKind::AsymptoticV;
        default: return FigureKind::Energy;
    }
}

FigureSpec default_figure(FigureId id, double q) {
    FigureSpec s;
    s.id = id;
    s.output_stem = to_string(id);
    auto with_b = [&s](double eps, std::initializer_list<double> bs) {
        for (double b : bs) s.params.emplace_back(eps, b);
    };
    switch (id) {
        case FigureId::Fig1:
            with_b(1.0, {0.8, 1.0, 1.5});
            s.z0 = {1, 0, 0, 0};
            s.t_end = 40.0;
            s.sample_dt = 0.05;
            break;
        case FigureId::Fig2: {
            if (!(q > 0.0) || q == 1.0) throw std::invalid_argument("fig2: q must be positive and != 1");
            const double b = std::sqrt(q + 1.0 / q - 1.0);
            with_b(1.0, {b});
            s.z0 = {1, 0, 0, 0};
            const PortraitCheck pc = portrait_frequencies(b);
            s.t_end = pc.rational && pc.period <= 2000.0 ? pc.period : 100.0;
            s.sample_dt = 0.01;
            break;
        }
        case FigureId::Fig3:
            with_b(1.0, {2.0, 5.0, 20.0});
            s.z0 = {1, 0, 0, 0};
            s.t_end = 100.0;
            s.sample_dt = 0.01;
            break;
        case FigureId::Fig4:
            with_b(1.0, {2.0, 5.0, 20.0});
            s.z0 = {1, 0.5, 0, 0};
            s.t_end = 100.0;
            s.sample_dt = 0.01;
            break;
        case FigureId::Fig5:
        case FigureId::Fig6:
            with_b(1.0, {2.0, 10.0, 50.0});
            s.z0 = {1, 0.1, 0, 0};
            s.t_end = 40.0;
            s.sample_dt = 0.005;
            break;
        case FigureId::Fig7:
            with_b(0.5, {0.5, std::sqrt(0.5), 1.0});
            s.z0 = {1, 0, 0, 0};
            s.t_end = 60.0;
            s.sample_dt = 0.05;
            break;
        case FigureId::Fig8:
        case FigureId::Fig9:
            with_b(0.5, {id == FigureId::Fig8 ? 1.0 : 2.0});
            s.z0 = {1, 1, 1, 1};
            s.t_end = 60.0;
            s.sample_dt = 0.01;
            break;
    }
    return s;
}

namespace {

bool has_asymptotic_columns(FigureId id) { return id == FigureId::Fig5 || id == FigureId::Fig6; }

}  // namespace

FigureData compute_figure(const FigureSpec& spec, double tol) {
    if (spec.params.empty()) throw std::invalid_argument("figure: no parameter sets");
    FigureData data;
    data.spec = spec;
    IntegrateOptions opts;
    opts.tol = tol;
    opts.sample_dt = spec.sample_dt;
    opts.energy_cap = 1e100;
    for (const Params& p : spec.params) {
        opts.enforce_balance = classify(p).kind != RegimeKind::ExpBlowup;
        FigureBlock block{p, integrate(p, spec.z0, spec.t_end, opts), {}, {}};
        if (has_asymptotic_columns(spec.id)) {
            if (!(p.b() > 1.0) || p.epsilon() != 1.0)
                throw std::invalid_argument("figure: asymptotic columns need eps = 1 and b > 1");
            const Vec4 z0 = spec.z0.to_vec();
            for (double t : block.trajectory.times) {
                const Vec4 z = asymptotic_propagator(p.b(), t) * z0;
                block.u_asym.push_back(z[0]);
                block.v_asym.push_back(z[2]);
            }
        }
        data.blocks.push_back(std::move(block));
    }
    return data;
}

void write_figure_csv(std::ostream& out, const FigureData& data) {
    const bool asym = has_asymptotic_columns(data.spec.id);
    out << "t,u,x,v,y,E" << (asym ? ",u_asym,v_asym" : "") << '\n';
    for (std::size_t bi = 0; bi < data.blocks.size(); ++bi) {
        const auto& blk = data.blocks[bi];
        if (bi > 0) out << '\n';
        out << "# block=" << bi << " epsilon=" << format_double(blk.params.epsilon())
            << " b=" << format_double(blk.params.b()) << '\n';
        const auto& tr = blk.trajectory;
        for (std::size_t k = 0; k < tr.size(); ++k) {
            const State& s = tr.states[k];
            out << format_double(tr.times[k]) << ',' << format_double(s.u) << ',' << format_double(s.x) << ','
                << format_double(s.v) << ',' << format_double(s.y) << ',' << format_double(tr.energies[k]);
            if (asym) out << ',' << format_double(blk.u_asym[k]) << ',' << format_double(blk.v_asym[k]);
            out << '\n';
        }
        if (tr.truncated)
            out << "# truncated: E > 1e100 at t=" << format_double(tr.times.back()) << "; series stops here\n";
    }
}

std::string figure_plot_script(const FigureData& data, const std::string& csv_name) {
    const FigureKind kind = figure_kind(data.spec.id);
    std::ostringstream out;
    out << "# " << to_string(data.spec.id) << ": columns are referenced by header name\n";
    out << "data " << csv_name << '\n';
    switch (kind) {
        case FigureKind::Energy: {
            const bool growing = data.spec.id == FigureId::Fig1 || data.spec.id == FigureId::Fig7;
            out << "xlabel t\nylabel E\nlogy " << (growing ? "true" : "false") << '\n';
            break;
        }
        case FigureKind::Phase: out << "xlabel u\nylabel u'\nlogy false\naspect equal\n"; break;
        case FigureKind::AsymptoticU: out << "xlabel t\nylabel u\nlogy false\n"; break;
        case FigureKind::AsymptoticV: out << "xlabel t\nylabel v\nlogy false\n"; break;
    }
    for (std::size_t bi = 0; bi < data.blocks.size(); ++bi) {
        const auto& p = data.blocks[bi].params;
        const std::string tag = "eps=" + format_double(p.epsilon()) + " b=" + format_double(p.b());
        switch (kind) {
            case FigureKind::Energy:
                out << "series block=" << bi << " x=t y=E label=\"" << tag << "\"\n";
                break;
            case FigureKind::Phase:
                out << "series block=" << bi << " x=u y=x label=\"" << tag << "\"\n";
                break;
            case FigureKind::AsymptoticU:
                out << "series block=" << bi << " x=t y=u label=\"" << tag << " numerical\"\n";
                out << "series block=" << bi << " x=t y=u_asym style=dashed label=\"" << tag << " asymptotic\"\n";
                break;
            case FigureKind::AsymptoticV:
                out << "series block=" << bi << " x=t y=v label=\"" << tag << " numerical\"\n";
                out << "series block=" << bi << " x=t y=v_asym style=dashed label=\"" << tag << " asymptotic\"\n";
                break;
        }
    }
    return out.str();
}

void write_figure_files(const FigureData& data) {
    const std::string csv_path = data.spec.output_stem + ".csv";
    const std::string plot_path = data.spec.output_stem + ".plot";
    {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + csv_path);
        write_figure_csv(csv, data);
        if (!csv.flush()) throw std::runtime_error("write failed: " + csv_path);
    }
    std::ofstream plot(plot_path, std::ios::binary);
    if (!plot) throw std::runtime_error("cannot write " + plot_path);
    const auto slash = csv_path.find_last_of('/');
    plot << figure_plot_script(data, slash == std::string::npos ? csv_path : csv_path.substr(slash + 1));
    if (!plot.flush()) throw std::runtime_error("write failed: " + plot_path);
}

ParsedCsv parse_figure_csv(std::istream& in) {
    ParsedCsv out;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    {
        std::istringstream hs(line);
        std::string name;
        while (std::getline(hs, name, ',')) out.header.push_back(name);
    }
    bool open = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            open = false;
            continue;
        }
        if (!open) {
            out.blocks.emplace_back();
            out.comments.emplace_back();
            open = true;
        }
        if (line.front() == '#') {
            out.comments.back().push_back(line);
            continue;
        }
        std::vector<double> row;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            double v = 0.0;
            const auto res = std::from_chars(p, end, v);
            if (res.ec != std::errc()) throw std::runtime_error("csv: bad number in line: " + line);
            row.push_back(v);
            p = res.ptr;
            if (p < end && *p == ',') ++p;
        }
        if (row.size() != out.header.size()) throw std::runtime_error("csv: column count mismatch: " + line);
        out.blocks.back().push_back(std::move(row));
    }
    return out;
}

}  // namespace antidamp
