#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antidamp/core.hpp"
#include "antidamp/sim.hpp"

namespace antidamp {

enum class FigureId { Fig1 = 1, Fig2, Fig3, Fig4, Fig5, Fig6, Fig7, Fig8, Fig9 };

std::optional<FigureId> parse_figure_id(std::string_view text);  // "fig3", "Fig3", "3"
std::string to_string(FigureId id);

/// What a figure shows. Energy curves, (u, u') phase portraits, or numerical
/// versus large-coupling asymptotic components.
enum class FigureKind { Energy, Phase, AsymptoticU, AsymptoticV };

struct FigureSpec {
    FigureId id = FigureId::Fig1;
    std::vector<Params> params;  ///< one CSV block per entry
    State z0;
    double t_end = 0.0;
    double sample_dt = 0.0;
    std::string output_stem;
};

/// Defaults for each figure. Initial data follow the published captions; coupling
/// values and time windows not given there are chosen here:
///
///   Fig1  eps=1,    b in {0.8, 1, 1.5},        z0=(1,0,0,0),   t in [0,40]
///   Fig2  eps=1,    b=sqrt(q+1/q-1),           z0=(1,0,0,0),   one common period
///   Fig3  eps=1,    b in {2, 5, 20},           z0=(1,0,0,0),   t in [0,100]
///   Fig4  eps=1,    b in {2, 5, 20},           z0=(1,0.5,0,0), t in [0,100]
///   Fig5  eps=1,    b in {2, 10, 50},          z0=(1,0.1,0,0), t in [0,40]  (u vs asymptotic)
///   Fig6  eps=1,    b in {2, 10, 50},          z0=(1,0.1,0,0), t in [0,40]  (v vs asymptotic)
///   Fig7  eps=0.5,  b in {0.5, sqrt(0.5), 1},  z0=(1,0,0,0),   t in [0,60]
///   Fig8  eps=0.5,  b=1,                       z0=(1,1,1,1),   t in [0,60]
///   Fig9  eps=0.5,  b=2,                       z0=(1,1,1,1),   t in [0,60]
///
/// q is only used by Fig2 and must be positive and != 1.
FigureSpec default_figure(FigureId id, double q = 4.0);

FigureKind figure_kind(FigureId id);

struct FigureBlock {
    Params params;
    Trajectory trajectory;
    std::vector<double> u_asym;  ///< Fig5/Fig6 only
    std::vector<double> v_asym;
};

struct FigureData {
    FigureSpec spec;
    std::vector<FigureBlock> blocks;
};

/// Integrates every block; blow-up series stop once E exceeds 1e100.
FigureData compute_figure(const FigureSpec& spec, double tol = 1e-10);

/// Header `t,u,x,v,y,E` (plus `u_asym,v_asym` for Fig5/Fig6), then one block per
/// parameter set. Each block opens with a `#` comment naming its parameters; blocks are
/// separated by a blank line. A truncated block ends with a `# truncated` note row.
void write_figure_csv(std::ostream& out, const FigureData& data);

/// Declarative plot description referencing the CSV by file name and columns by name.
std::string figure_plot_script(const FigureData& data, const std::string& csv_name);

/// Writes <stem>.csv and <stem>.plot. Throws std::runtime_error naming the path on I/O failure.
void write_figure_files(const FigureData& data);

struct ParsedCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::vector<double>>> blocks;
    std::vector<std::vector<std::string>> comments;  ///< per block
};

ParsedCsv parse_figure_csv(std::istream& in);

}  // namespace antidamp
