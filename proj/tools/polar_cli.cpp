#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polar/simulate.hpp"

namespace {

struct CodeArgs {
    int n = 0;
    int k = 0;
    double design_ebn0 = 2.0;
    std::string method = "gaussian-approx";
    std::string frozen_file;
    std::string crc_name = "none";
};

void add_code_options(CLI::App* cmd, CodeArgs& args, bool crc_option) {
    cmd->add_option("--n", args.n, "log2 of the block length");
    cmd->add_option("--k", args.k, "information bit count");
    cmd->add_option("--design-ebn0", args.design_ebn0,
                    "construction design point in dB");
    cmd->add_option("--method", args.method,
                    "gaussian-approx or bhattacharyya");
    cmd->add_option("--frozen-file", args.frozen_file,
                    "frozen-set file (one index per line)");
    if (crc_option)
        cmd->add_option("--crc", args.crc_name, "none, crc8 or crc32");
}

polar::SimConfig config_from_code_args(const CodeArgs& args) {
    polar::SimConfig c;
    c.n = args.n;
    c.K = args.k;
    c.design_ebn0_db = args.design_ebn0;
    c.method = args.method;
    c.frozen_file = args.frozen_file;
    c.crc_name = args.crc_name;
    return c;
}

std::vector<double> parse_ebn0_list(const std::string& text) {
    std::vector<double> values;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        double start, step, stop;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':')
            throw std::invalid_argument("bad Eb/N0 range: " + text);
        if (step <= 0)
            throw std::invalid_argument("Eb/N0 range step must be positive");
        for (double v = start; v <= stop + 1e-9; v += step)
            values.push_back(v);
        return values;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            values.push_back(std::stod(item));
    if (values.empty())
        throw std::invalid_argument("empty Eb/N0 list");
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            values.push_back(std::stoi(item));
    return values;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write file: " + path);
    out << text;
}

int run_construct(const CodeArgs& args, const std::string& out_path) {
    polar::SimConfig c = config_from_code_args(args);
    polar::PolarCode code = polar::code_from_config(c);
    write_output(out_path, polar::format_frozen_set(code));
    return 0;
}

int run_timesteps(const CodeArgs& args, const std::string& list_sizes,
                  const std::string& format, bool dump_tree) {
    polar::SimConfig c = config_from_code_args(args);
    polar::PolarCode code = polar::code_from_config(c);
    if (dump_tree) {
        std::cout << polar::format_tree(polar::build_schedule(code));
        return 0;
    }
    std::vector<int> sizes = parse_int_list(list_sizes);
    if (sizes.empty())
        throw std::invalid_argument("empty list-size list");
    auto rows = polar::reduction_report(code, sizes);
    if (format == "json")
        std::cout << polar::to_json(rows).dump(2) << '\n';
    else
        std::cout << polar::to_csv(rows);
    return 0;
}

int run_decode(const CodeArgs& args, const std::string& llr_file,
               const std::string& algo, int list_size, const std::string& pm) {
    polar::SimConfig c = config_from_code_args(args);
    polar::PolarCode code = polar::code_from_config(c);

    polar::LlrVector llr;
    std::istringstream in(read_file(llr_file));
    double v;
    while (in >> v)
        llr.push_back(v);

    std::string bits;
    double pm_value = 0.0;
    long steps = 0;
    std::string crc_status = code.crc ? "fail" : "n/a";

    polar::DecoderSpec dec = polar::parse_decoder(algo);
    if (dec.sc) {
        polar::ScResult res = polar::sc_decode(code, llr, polar::parse_pm_mode(pm));
        for (std::uint8_t b : polar::extract_message(code, res.u_hat))
            bits.push_back(static_cast<char>('0' + b));
        steps = res.time_steps;
        if (code.crc)
            crc_status = polar::crc_check(polar::extract_message(code, res.u_hat),
                                          *code.crc)
                             ? "pass"
                             : "fail";
    } else {
        polar::ListDecodeOptions opt;
        opt.algo = dec.algo;
        opt.cap = dec.cap;
        opt.list_size = list_size;
        opt.pm_mode = polar::parse_pm_mode(pm);
        polar::DecodeResult res = polar::list_decode(code, llr, opt);
        for (std::uint8_t b : polar::extract_message(code, res.u_hat))
            bits.push_back(static_cast<char>('0' + b));
        pm_value = res.sorted_pms[static_cast<std::size_t>(res.selected)];
        steps = res.time_steps;
        if (code.crc)
            crc_status = res.crc_pass ? "pass" : "fail";
    }

    std::cout << "message=" << bits << '\n';
    std::cout << "pm=" << pm_value << '\n';
    std::cout << "crc=" << crc_status << '\n';
    std::cout << "time_steps=" << steps << '\n';
    return 0;
}

int emit_sim_result(const polar::SimResult& result, const std::string& format,
                    const std::string& out_path) {
    if (format == "json")
        write_output(out_path, polar::to_json(result).dump(2) + "\n");
    else if (format == "csv")
        write_output(out_path, polar::to_csv(result));
    else
        throw std::invalid_argument("unknown output format: " + format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar code encode/decode and simulation tool"};
    app.require_subcommand(1);

    // construct
    CodeArgs construct_args;
    std::string construct_out;
    auto* construct = app.add_subcommand(
        "construct", "build a frozen set and write it to a file");
    add_code_options(construct, construct_args, false);
    construct->add_option("--out", construct_out, "output path (default stdout)");

    // timesteps
    CodeArgs ts_args;
    std::string ts_list_sizes = "2,4,8,16,32";
    std::string ts_format = "csv";
    bool ts_tree = false;
    auto* timesteps = app.add_subcommand(
        "timesteps", "time-step table for SC/SCL/SSCL/Fast-SSCL");
    add_code_options(timesteps, ts_args, false);
    timesteps->add_option("--list-sizes", ts_list_sizes, "comma-separated L values");
    timesteps->add_option("--format", ts_format, "csv or json");
    timesteps->add_flag("--tree", ts_tree, "print the pruned decode tree instead");

    // decode
    CodeArgs dec_args;
    std::string dec_llr_file, dec_algo = "fast-sscl", dec_pm = "exact";
    int dec_list = 8;
    auto* decode = app.add_subcommand("decode", "decode one LLR vector");
    add_code_options(decode, dec_args, true);
    decode->add_option("--llr-file", dec_llr_file, "one LLR per line")->required();
    decode->add_option("--algo", dec_algo, "sc, scl, sscl, fast-sscl, capped:T");
    decode->add_option("--list-size", dec_list, "list size L");
    decode->add_option("--pm", dec_pm, "exact or hwf");

    // simulate
    CodeArgs sim_args;
    sim_args.n = 6;
    sim_args.k = 32;
    std::string sim_config_path, sim_algo = "fast-sscl", sim_pm = "exact";
    std::string sim_ebn0 = "2.0", sim_format = "csv", sim_out;
    int sim_list = 8, sim_workers = 0;
    long sim_frames = 10000, sim_max_fe = 100;
    std::uint64_t sim_seed = 1;
    auto* simulate = app.add_subcommand(
        "simulate", "Monte-Carlo FER/BER campaign over BPSK/AWGN");
    add_code_options(simulate, sim_args, true);
    simulate->add_option("--config", sim_config_path, "JSON config file");
    simulate->add_option("--algo", sim_algo, "sc, scl, sscl, fast-sscl, capped:T");
    simulate->add_option("--list-size", sim_list, "list size L");
    simulate->add_option("--pm", sim_pm, "exact or hwf");
    simulate->add_option("--ebn0", sim_ebn0, "list `1,2,3` or range `1.0:0.5:4.0`");
    simulate->add_option("--frames", sim_frames, "max frames per point");
    simulate->add_option("--max-frame-errors", sim_max_fe,
                         "early stop after this many frame errors");
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--workers", sim_workers, "worker threads (0 = all)");
    simulate->add_option("--format", sim_format, "csv or json");
    simulate->add_option("--out", sim_out, "output path (default stdout)");

    // equivalence
    CodeArgs eq_args;
    eq_args.n = 6;
    eq_args.k = 32;
    std::string eq_algos = "scl,sscl,fast-sscl", eq_pm = "exact", eq_ebn0 = "2.0";
    int eq_list = 8, eq_workers = 0;
    long eq_frames = 10000;
    std::uint64_t eq_seed = 1;
    auto* equivalence = app.add_subcommand(
        "equivalence", "decode identical frames with several list decoders and "
                       "report divergences");
    add_code_options(equivalence, eq_args, true);
    equivalence->add_option("--algos", eq_algos, "comma-separated decoder list");
    equivalence->add_option("--list-size", eq_list, "list size L");
    equivalence->add_option("--pm", eq_pm, "exact or hwf");
    equivalence->add_option("--ebn0", eq_ebn0, "Eb/N0 list or range");
    equivalence->add_option("--frames", eq_frames, "frames to compare");
    equivalence->add_option("--seed", eq_seed, "RNG seed");
    equivalence->add_option("--workers", eq_workers, "worker threads (0 = all)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return run_construct(construct_args, construct_out);
        if (timesteps->parsed())
            return run_timesteps(ts_args, ts_list_sizes, ts_format, ts_tree);
        if (decode->parsed())
            return run_decode(dec_args, dec_llr_file, dec_algo, dec_list, dec_pm);
        if (simulate->parsed()) {
            polar::SimConfig config;
            if (!sim_config_path.empty()) {
                config = polar::sim_config_from_json(
                    nlohmann::json::parse(read_file(sim_config_path)));
            } else {
                config = config_from_code_args(sim_args);
                config.decoder = sim_algo;
                config.list_size = sim_list;
                config.pm_mode = sim_pm;
                config.ebn0_db = parse_ebn0_list(sim_ebn0);
                config.max_frames = sim_frames;
                config.max_frame_errors = sim_max_fe;
                config.seed = sim_seed;
                config.workers = sim_workers;
                config.format = sim_format;
            }
            polar::SimResult result = polar::run_simulation(config);
            return emit_sim_result(result, config.format, sim_out);
        }
        if (equivalence->parsed()) {
            polar::SimConfig config = config_from_code_args(eq_args);
            config.list_size = eq_list;
            config.pm_mode = eq_pm;
            config.ebn0_db = parse_ebn0_list(eq_ebn0);
            config.max_frames = eq_frames;
            config.seed = eq_seed;
            config.workers = eq_workers;

            std::istringstream in(eq_algos);
            std::vector<std::string> algos;
            std::string item;
            while (std::getline(in, item, ','))
                if (!item.empty())
                    algos.push_back(item);

            polar::EquivalenceReport report =
                polar::run_equivalence_campaign(config, algos);
            std::cout << "frames=" << report.frames << '\n';
            for (const auto& pair : report.pairs) {
                std::cout << pair.algo_a << " vs " << pair.algo_b << ": "
                          << pair.divergences << " divergences";
                if (pair.divergences > 0)
                    std::cout << " (first at frame " << pair.first_frame << ", "
                              << pair.first_kind << ")";
                std::cout << '\n';
            }
            return report.total_divergences() == 0 ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
