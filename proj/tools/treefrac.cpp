// treefrac: spanning-tree counts of planar graphs from alternating continued
// fractions, thin-semigroup orbits, and certified fractal-dimension bounds.

#include "treefrac/census.hpp"
#include "treefrac/cfrac.hpp"
#include "treefrac/config.hpp"
#include "treefrac/dimension.hpp"
#include "treefrac/errors.hpp"
#include "treefrac/orbit.hpp"
#include "treefrac/reproduce.hpp"
#include "treefrac/treegraph.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using nlohmann::json;
using namespace treefrac;

namespace {

std::string iso_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit_record(const std::string& command, const json& inputs, const json& outputs) {
    json record;
    record["command"] = command;
    record["inputs"] = inputs;
    record["outputs"] = outputs;
    record["timestamp"] = iso_timestamp();
    record["artifact_version"] = artifact_version();
    std::cout << record.dump(2) << "\n";
}

std::vector<std::string> decimal_list(const std::vector<BigInt>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(to_decimal(x));
    return out;
}

AlternatingCF parse_bs(const std::string& csv) {
    AlternatingCF acf;
    std::stringstream ss(csv);
    std::string item;
    std::size_t pos = 0;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("expected comma-separated positive integers", pos);
        acf.bs.emplace_back(item);
        if (acf.bs.back() < 1) throw ParseError("entries must be >= 1", pos);
        pos += item.size() + 1;
    }
    if (acf.bs.empty()) throw ParseError("empty sequence", 0);
    return acf;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Limits load_limits(const std::string& config_path) {
    Limits lim;  // defaults
    if (!config_path.empty()) {
        json j = json::parse(read_file(config_path));
        if (j.contains("census_max_n")) lim.census_max_n = j["census_max_n"];
        if (j.contains("ball_max_elements")) lim.ball_max_elements = j["ball_max_elements"];
        if (j.contains("pressure_max_terms")) lim.pressure_max_terms = j["pressure_max_terms"];
        if (j.contains("grid_cells")) lim.grid_cells = j["grid_cells"];
        if (j.contains("grid_cells_max")) lim.grid_cells_max = j["grid_cells_max"];
        if (j.contains("threads")) lim.threads = j["threads"];
    }
    // environment overrides the file
    Limits env = Limits::from_env();
    Limits defaults;
    if (env.census_max_n != defaults.census_max_n) lim.census_max_n = env.census_max_n;
    if (env.ball_max_elements != defaults.ball_max_elements)
        lim.ball_max_elements = env.ball_max_elements;
    if (env.pressure_max_terms != defaults.pressure_max_terms)
        lim.pressure_max_terms = env.pressure_max_terms;
    if (env.grid_cells != defaults.grid_cells) lim.grid_cells = env.grid_cells;
    if (env.grid_cells_max != defaults.grid_cells_max) lim.grid_cells_max = env.grid_cells_max;
    if (env.threads != defaults.threads) lim.threads = env.threads;
    return lim;
}

json certificate_json(const CertifyOutcome& o) {
    json j;
    j["success"] = o.success;
    j["kind"] = o.cert.kind;
    j["s"] = o.cert.s;
    j["alphabet"] = o.cert.alphabet == 0 ? json("unbounded") : json(o.cert.alphabet);
    j["margin"] = o.cert.margin;
    j["f_min"] = o.cert.f_min;
    j["sampled_margin"] = o.sampled_margin;
    j["grid_cells"] = o.cert.grid_cells;
    j["lipschitz"] = o.cert.lipschitz;
    j["rounding_budget"] = o.cert.rounding_budget;
    j["eigenvalue"] = o.cert.poly.eigenvalue;
    j["eigenvector"] = o.cert.poly.eigenvector;
    j["coefficients"] = o.cert.poly.coeffs;
    if (!o.reason.empty()) j["reason"] = o.reason;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spanning trees of planar graphs via continued fractions"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned threads_flag = 0;
    app.add_option("--config", config_path, "JSON file with cap overrides");
    app.add_option("--threads", threads_flag, "worker threads (0 = all cores)");

    std::string command_line;
    for (int i = 0; i < argc; ++i) {
        if (i) command_line += " ";
        command_line += argv[i];
    }

    // cf ------------------------------------------------------------------
    auto* cf_cmd = app.add_subcommand("cf", "continued-fraction views of a rational");
    std::string cf_fraction, cf_eval_text;
    cf_cmd->add_option("fraction", cf_fraction, "rational as t/u");
    cf_cmd->add_option("--eval", cf_eval_text, "evaluate a bracketed expansion instead");

    // graph -----------------------------------------------------------------
    auto* graph_cmd = app.add_subcommand("graph", "build the chain graph for an expansion");
    std::string graph_bs, graph_dot, graph_edgelist;
    bool graph_trim = false;
    graph_cmd->add_option("--bs", graph_bs, "comma list b1,b2,...")->required();
    graph_cmd->add_flag("--trim", graph_trim, "peel the tail after deleting the mark");
    graph_cmd->add_option("--dot", graph_dot, "write DOT to this file");
    graph_cmd->add_option("--edge-list", graph_edgelist, "write edge-list text to this file");

    // tau ---------------------------------------------------------------
    auto* tau_cmd = app.add_subcommand("tau", "spanning-tree count of an edge-list file");
    std::string tau_file;
    tau_cmd->add_option("file", tau_file, "edge-list input")->required();

    // census -----------------------------------------------------------
    auto* census_cmd = app.add_subcommand("census", "exhaustive value sets T(n)");
    int census_n = 4;
    bool census_all = false, census_values_only = false, census_allow7 = false;
    std::string census_csv, cache_dir;
    census_cmd->add_option("--n", census_n, "vertex count")->required();
    census_cmd->add_flag("--all-graphs", census_all, "drop the planarity filter");
    census_cmd->add_flag("--values-only", census_values_only, "skip isomorph rejection");
    census_cmd->add_flag("--allow-n7", census_allow7, "enable the gated n = 7 run");
    census_cmd->add_option("--csv", census_csv, "also write values as CSV");
    census_cmd->add_option("--cache-dir", cache_dir, "reuse cached results from here");

    // alpha -----------------------------------------------------------
    auto* alpha_cmd = app.add_subcommand("alpha", "least vertex count achieving a value");
    std::string alpha_t = "3";
    int alpha_cap = 6, alpha_cf_alpha = 10;
    long alpha_table_max = 0;
    std::string alpha_csv;
    alpha_cmd->add_option("--t", alpha_t, "target spanning-tree count")->required();
    alpha_cmd->add_option("--cap", alpha_cap, "exhaustive search cap (<= 7)");
    alpha_cmd->add_option("--cf-alphabet", alpha_cf_alpha, "entry bound for the chain search");
    alpha_cmd->add_option("--table-max", alpha_table_max, "emit a CSV table for t = 3..max");
    alpha_cmd->add_option("--csv", alpha_csv, "table output file");

    // orbit ----------------------------------------------------------
    auto* orbit_cmd = app.add_subcommand("orbit", "thin-semigroup orbits");
    orbit_cmd->require_subcommand(1);
    auto* ball_cmd = orbit_cmd->add_subcommand("ball", "norm ball statistics");
    auto* nums_cmd = orbit_cmd->add_subcommand("numerators", "orbit inner products");
    auto* rep_cmd = orbit_cmd->add_subcommand("repnum", "representation number of n");
    auto* adm_cmd = orbit_cmd->add_subcommand("admissible", "congruence quotients mod q");
    int orbit_A = 2;
    std::uint64_t orbit_N = 100;
    std::string rep_n = "1";
    bool nums_denominators = false;
    int adm_qmax = 30;
    for (auto* c : {ball_cmd, nums_cmd, rep_cmd})
        c->add_option("--N", orbit_N, "Frobenius norm bound");
    for (auto* c : {ball_cmd, nums_cmd, rep_cmd, adm_cmd})
        c->add_option("--A", orbit_A, "alphabet bound");
    nums_cmd->add_flag("--denominators", nums_denominators, "project on (0,1) instead of (1,0)");
    rep_cmd->add_option("--n", rep_n, "target integer")->required();
    adm_cmd->add_option("--qmax", adm_qmax, "largest modulus");

    // dim -------------------------------------------------------------
    auto* dim_cmd = app.add_subcommand("dim", "transfer-operator dimension bounds");
    dim_cmd->require_subcommand(1);
    auto* lower_cmd = dim_cmd->add_subcommand("lower", "certify dimension > s");
    auto* upper_cmd = dim_cmd->add_subcommand("upper", "certify dimension < s");
    auto* press_cmd = dim_cmd->add_subcommand("pressure", "depth-n pressure approximant");
    auto* circ_cmd = dim_cmd->add_subcommand("circles", "removed intervals of the fractal");
    int dim_A = 110, dim_order = 5, dim_depth = 8, circ_depth = 4;
    double dim_s = 0.775;
    std::size_t dim_grid = 0;
    double circ_min_diameter = 1e-4;
    std::string circ_csv;
    lower_cmd->add_option("--A", dim_A, "alphabet bound");
    for (auto* c : {lower_cmd, upper_cmd, press_cmd}) c->add_option("--s", dim_s, "parameter s");
    for (auto* c : {lower_cmd, upper_cmd}) {
        c->add_option("--order", dim_order, "interpolation order");
        c->add_option("--grid", dim_grid, "certification grid cells");
    }
    press_cmd->add_option("--A", dim_A, "alphabet bound");
    press_cmd->add_option("--depth", dim_depth, "word length");
    circ_cmd->add_option("--depth", circ_depth, "refinement stages");
    circ_cmd->add_option("--min-diameter", circ_min_diameter, "emission cutoff");
    circ_cmd->add_option("--csv", circ_csv, "write CSV here instead of stdout JSON");

    // reproduce-paper ----------------------------------------------------
    auto* repro_cmd = app.add_subcommand("reproduce-paper",
                                         "run the full verification suite");
    std::string repro_ids;
    repro_cmd->add_option("--criteria", repro_ids, "comma list of criterion ids (default all)");

    try {
        app.parse(argc, argv);

        Limits limits = load_limits(config_path);
        if (threads_flag) limits.threads = threads_flag;
        unsigned threads = limits.threads;

        if (*cf_cmd) {
            json in, out;
            Rational value;
            if (!cf_eval_text.empty()) {
                in["expansion"] = cf_eval_text;
                value = cf_eval(CFExpansion::parse(cf_eval_text));
            } else if (!cf_fraction.empty()) {
                in["fraction"] = cf_fraction;
                value = Rational::parse(cf_fraction);
            } else {
                throw ParseError("cf needs a fraction or --eval", 0);
            }
            CFExpansion cf = cf_expand(value);
            out["value"] = value.str();
            out["expansion"] = cf.str();
            out["canonical"] = cf.is_canonical();
            if (value.in_open_unit_interval()) {
                auto alt = to_alternating(value);
                out["representable"] = alt.has_value();
                if (alt) {
                    out["alternating"] = alt->str();
                    Mat2 prod = alternating_product(*alt);
                    out["matrix_bottom_row"] = {to_decimal(prod.c), to_decimal(prod.d)};
                } else {
                    out["alternating"] = nullptr;
                }
            }
            emit_record(command_line, in, out);
            return 0;
        }

        if (*graph_cmd) {
            json in{{"bs", graph_bs}, {"trim", graph_trim}};
            AlternatingCF bs = parse_bs(graph_bs);
            GraphBuildReport rep = graph_trim ? build_trimmed(bs) : build_from_alternating(bs);
            json out;
            out["tau_del"] = to_decimal(rep.tau_del);
            out["tau_con"] = to_decimal(rep.tau_con);
            if (graph_trim) out["tau"] = to_decimal(rep.tau_del);
            out["vertex_count"] = rep.vertex_count;
            out["edge_count"] = rep.graph.edges.size();
            out["simple"] = rep.simple;
            out["planar"] = rep.planar;
            if (!graph_dot.empty()) {
                write_file(graph_dot, to_dot(rep.graph));
                out["dot_file"] = graph_dot;
            }
            if (!graph_edgelist.empty()) {
                write_file(graph_edgelist, to_edge_list(rep.graph));
                out["edge_list_file"] = graph_edgelist;
            }
            emit_record(command_line, in, out);
            return 0;
        }

        if (*tau_cmd) {
            MarkedGraph g = parse_edge_list(read_file(tau_file));
            json out;
            out["n"] = g.n;
            out["edges"] = g.edges.size();
            out["tau"] = to_decimal(tau(g));
            if (g.marked >= 0) {
                SpanningTreeVector v = stv(g);
                out["tau_del"] = to_decimal(v.del);
                out["tau_con"] = to_decimal(v.con);
            }
            emit_record(command_line, json{{"file", tau_file}}, out);
            return 0;
        }

        if (*census_cmd) {
            json in{{"n", census_n}, {"planar", !census_all}};
            std::string cache_file;
            if (!cache_dir.empty())
                cache_file = cache_dir + "/census_n" + std::to_string(census_n) + "_planar" +
                             (census_all ? "0" : "1") + ".json";
            json out;
            bool cache_hit = false;
            if (!cache_file.empty()) {
                std::ifstream probe(cache_file);
                if (probe) {
                    out = json::parse(read_file(cache_file));
                    cache_hit = true;
                }
            }
            if (!cache_hit) {
                CensusOptions opt;
                opt.planar_only = !census_all;
                opt.isomorph_reject = !census_values_only;
                opt.allow_n7 = census_allow7;
                opt.threads = threads;
                opt.limits = limits;
                CensusResult res = enumerate_T(census_n, opt);
                out = json::parse(res.to_json());
                if (!cache_file.empty()) write_file(cache_file, out.dump());
            }
            if (!census_csv.empty()) {
                std::string csv = "tau\n";
                for (const auto& v : out["values"]) csv += v.get<std::string>() + "\n";
                write_file(census_csv, csv);
            }
            emit_record(command_line, in, out);
            return 0;
        }

        if (*alpha_cmd) {
            AlphaOptions opt;
            opt.search_cap = alpha_cap;
            opt.cf_alphabet = alpha_cf_alpha;
            opt.census.threads = threads;
            opt.census.limits = limits;
            if (alpha_table_max >= 3) {
                std::string csv = "t,alpha\n";
                std::map<long, int> table;
                CensusOptions copt = opt.census;
                copt.keep_witnesses = false;
                for (int n = 3; n <= std::min(alpha_cap, 7); ++n) {
                    if (n == 7) copt.allow_n7 = true;
                    CensusResult r = enumerate_T(n, copt);
                    for (const BigInt& v : r.values)
                        if (fits_int64(v)) {
                            long key = v.convert_to<long>();
                            if (!table.count(key)) table[key] = n;
                        }
                }
                for (const auto& [t, a] : table)
                    if (t >= 3 && t <= alpha_table_max)
                        csv += std::to_string(t) + "," + std::to_string(a) + "\n";
                if (!alpha_csv.empty())
                    write_file(alpha_csv, csv);
                else
                    std::cout << csv;
                return 0;
            }
            AlphaResult res = alpha(BigInt(alpha_t), opt);
            json out;
            if (res.exact) {
                out["alpha"] = res.exact->alpha;
                out["witness_edge_list"] = [&] {
                    MarkedGraph w;
                    w.n = res.exact->witness_n;
                    w.edges = res.exact->witness_edges;
                    return to_edge_list(w);
                }();
            } else {
                out["alpha"] = nullptr;
            }
            if (res.cf_bound) {
                out["cf_bound_vertices"] = res.cf_bound->vertices;
                out["cf_bound_bs"] = res.cf_bound->bs.str();
            }
            emit_record(command_line, json{{"t", alpha_t}, {"cap", alpha_cap}}, out);
            return 0;
        }

        if (*orbit_cmd) {
            if (*ball_cmd) {
                SemigroupBall b = ball(orbit_A, orbit_N, limits);
                json out{{"A", b.A},
                         {"N", b.N},
                         {"norm", b.norm_kind},
                         {"size", b.elements.size()},
                         {"growth_exponent", b.growth_exponent()}};
                emit_record(command_line, json{{"A", orbit_A}, {"N", orbit_N}}, out);
            } else if (*nums_cmd) {
                SemigroupBall b = ball(orbit_A, orbit_N, limits);
                std::pair<BigInt, BigInt> v2 =
                    nums_denominators ? std::pair<BigInt, BigInt>{0, 1}
                                      : std::pair<BigInt, BigInt>{1, 0};
                json out{{"A", orbit_A},
                         {"N", orbit_N},
                         {"values", decimal_list(numerators(b, {0, 1}, v2))}};
                emit_record(command_line,
                            json{{"A", orbit_A}, {"N", orbit_N}, {"denominators", nums_denominators}},
                            out);
            } else if (*rep_cmd) {
                SemigroupBall b = ball(orbit_A, orbit_N, limits);
                json out{{"n", rep_n},
                         {"count", representation_number(b, BigInt(rep_n))},
                         {"ball_size", b.elements.size()}};
                emit_record(command_line, json{{"A", orbit_A}, {"N", orbit_N}, {"n", rep_n}}, out);
            } else if (*adm_cmd) {
                json rows = json::array();
                bool all_full = true;
                for (int q = 2; q <= adm_qmax; ++q) {
                    CongruenceQuotient c = congruence_quotient(orbit_A, q);
                    all_full = all_full && c.full;
                    rows.push_back({{"q", q},
                                    {"reached", c.reached},
                                    {"order", sl2_order(q)},
                                    {"full", c.full}});
                }
                json out{{"all_full", all_full}, {"quotients", rows}};
                emit_record(command_line, json{{"A", orbit_A}, {"qmax", adm_qmax}}, out);
                return all_full ? 0 : 1;
            }
            return 0;
        }

        if (*dim_cmd) {
            CertifyOptions copt;
            copt.threads = threads;
            copt.grid_cells = dim_grid ? dim_grid : limits.grid_cells;
            copt.grid_cells_max = limits.grid_cells_max;
            if (*lower_cmd) {
                CertifyOutcome o = certify_lower(dim_A, dim_s, dim_order, copt);
                emit_record(command_line,
                            json{{"A", dim_A}, {"s", dim_s}, {"order", dim_order}},
                            certificate_json(o));
                return o.success ? 0 : 2;
            }
            if (*upper_cmd) {
                CertifyOutcome o = certify_upper(dim_s, dim_order, copt);
                emit_record(command_line, json{{"s", dim_s}, {"order", dim_order}},
                            certificate_json(o));
                return o.success ? 0 : 2;
            }
            if (*press_cmd) {
                double p = pressure_estimate({dim_A, dim_s, 2}, dim_depth, limits);
                emit_record(command_line,
                            json{{"A", dim_A}, {"s", dim_s}, {"depth", dim_depth}},
                            json{{"estimate", p}});
                return 0;
            }
            if (*circ_cmd) {
                std::vector<RemovedInterval> rs = fractal_circles(circ_depth, circ_min_diameter);
                std::string csv = "center,diameter,depth\n";
                for (const auto& r : rs) {
                    char line[96];
                    std::snprintf(line, sizeof line, "%.12g,%.12g,%d\n", r.center, r.diameter,
                                  r.depth);
                    csv += line;
                }
                if (!circ_csv.empty()) {
                    write_file(circ_csv, csv);
                    emit_record(command_line, json{{"depth", circ_depth}},
                                json{{"count", rs.size()}, {"csv_file", circ_csv}});
                } else {
                    std::cout << csv;
                }
                return 0;
            }
        }

        if (*repro_cmd) {
            std::vector<int> ids;
            if (!repro_ids.empty()) {
                std::stringstream ss(repro_ids);
                std::string item;
                while (std::getline(ss, item, ',')) ids.push_back(std::stoi(item));
            }
            bool all = true;
            for (const auto& r : run_acceptance(ids, threads)) {
                std::cout << format_criterion_line(r) << "\n" << std::flush;
                all = all && r.pass;
            }
            return all ? 0 : 2;
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
