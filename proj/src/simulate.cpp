#include "polar/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polar {

namespace {

// Fixed chunk size keeps chunk boundaries (and therefore early-stop points)
// independent of the worker count.
constexpr long kChunkFrames = 256;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(9) << v;
    return out.str();
}

}  // namespace

DecoderSpec parse_decoder(const std::string& text) {
    DecoderSpec spec;
    spec.name = text;
    if (text == "sc") {
        spec.sc = true;
        return spec;
    }
    if (text == "scl") {
        spec.algo = Algo::Scl;
        return spec;
    }
    if (text == "sscl") {
        spec.algo = Algo::Sscl;
        return spec;
    }
    if (text == "fast-sscl") {
        spec.algo = Algo::FastSscl;
        return spec;
    }
    if (text.rfind("capped:", 0) == 0) {
        spec.algo = Algo::Capped;
        try {
            spec.cap = std::stoi(text.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad capped decoder spec: " + text);
        }
        if (spec.cap < 0)
            throw std::invalid_argument("capped decoder: budget must be >= 0");
        return spec;
    }
    throw std::invalid_argument("unknown decoder: " + text);
}

PmMode parse_pm_mode(const std::string& text) {
    if (text == "exact")
        return PmMode::Exact;
    if (text == "hwf")
        return PmMode::Hwf;
    throw std::invalid_argument("unknown pm mode: " + text);
}

SimConfig sim_config_from_json(const nlohmann::json& j) {
    SimConfig c;
    c.n = j.value("n", c.n);
    c.K = j.value("k", c.K);
    c.design_ebn0_db = j.value("design_ebn0_db", c.design_ebn0_db);
    c.method = j.value("method", c.method);
    c.frozen_file = j.value("frozen_file", c.frozen_file);
    c.crc_name = j.value("crc", c.crc_name);
    c.decoder = j.value("decoder", c.decoder);
    c.list_size = j.value("list_size", c.list_size);
    c.pm_mode = j.value("pm_mode", c.pm_mode);
    if (j.contains("ebn0_db"))
        c.ebn0_db = j.at("ebn0_db").get<std::vector<double>>();
    c.max_frames = j.value("max_frames", c.max_frames);
    c.max_frame_errors = j.value("max_frame_errors", c.max_frame_errors);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.format = j.value("format", c.format);
    if (c.ebn0_db.empty())
        throw std::invalid_argument("sim config: ebn0_db list is empty");
    if (c.max_frames < 1)
        throw std::invalid_argument("sim config: max_frames must be >= 1");
    return c;
}

nlohmann::json sim_config_to_json(const SimConfig& c) {
    return nlohmann::json{{"n", c.n},
                          {"k", c.K},
                          {"design_ebn0_db", c.design_ebn0_db},
                          {"method", c.method},
                          {"frozen_file", c.frozen_file},
                          {"crc", c.crc_name},
                          {"decoder", c.decoder},
                          {"list_size", c.list_size},
                          {"pm_mode", c.pm_mode},
                          {"ebn0_db", c.ebn0_db},
                          {"max_frames", c.max_frames},
                          {"max_frame_errors", c.max_frame_errors},
                          {"seed", c.seed},
                          {"workers", c.workers},
                          {"format", c.format}};
}

PolarCode code_from_config(const SimConfig& config) {
    std::optional<CrcSpec> crc = crc_spec_by_name(config.crc_name);
    if (!config.frozen_file.empty()) {
        std::ifstream in(config.frozen_file);
        if (!in)
            throw std::runtime_error("cannot open frozen-set file: " +
                                     config.frozen_file);
        std::stringstream buf;
        buf << in.rdbuf();
        return load_frozen_set(buf.str(), config.n, crc);
    }
    ConstructionMethod method;
    if (config.method == "gaussian-approx")
        method = ConstructionMethod::GaussianApprox;
    else if (config.method == "bhattacharyya")
        method = ConstructionMethod::Bhattacharyya;
    else
        throw std::invalid_argument("unknown construction method: " +
                                    config.method);
    return construct_code(config.n, config.K, config.design_ebn0_db, method, crc);
}

bool operator==(const SimPoint& a, const SimPoint& b) {
    return a.decoder == b.decoder && a.list_size == b.list_size &&
           a.pm_mode == b.pm_mode && a.ebn0_db == b.ebn0_db &&
           a.frames == b.frames && a.bit_errors == b.bit_errors &&
           a.frame_errors == b.frame_errors && a.ber == b.ber &&
           a.fer == b.fer && a.time_steps == b.time_steps;
}

bool operator==(const SimResult& a, const SimResult& b) {
    return a.points == b.points;
}

namespace {

struct FrameOutcome {
    bool frame_error = false;
    long bit_errors = 0;
};

// Per-frame streams: two sub-streams per (Eb/N0 point, frame index), one for
// the message bits and one for the channel noise.
std::uint64_t frame_stream(std::size_t point_index, long frame) {
    return (static_cast<std::uint64_t>(point_index) << 40) ^
           static_cast<std::uint64_t>(frame);
}

struct FrameRunner {
    const PolarCode& code;
    const DecoderSpec& dec;
    ListDecodeOptions opt;
    std::uint64_t seed;
    const ListDecoder* decoder = nullptr;  // shared, decode() is thread-safe

    FrameOutcome run(double sigma, std::size_t point_index, long frame) const {
        const std::uint64_t stream = frame_stream(point_index, frame);
        Prng bits_rng(seed, 2 * stream);
        BitVector payload(static_cast<std::size_t>(code.payload_length()));
        for (auto& b : payload)
            b = bits_rng.bit();

        BitVector message = attach_code_crc(code, payload);
        BitVector u = place_message(code, message);
        BitVector x = encode(code, u);
        std::vector<double> y = modulate_bpsk(x);
        std::vector<double> r =
            transmit(y, NoiseModel{sigma, seed, 2 * stream + 1});
        LlrVector llr = llr_demod(r, sigma);

        BitVector u_hat;
        if (dec.sc)
            u_hat = sc_decode(code, llr, opt.pm_mode).u_hat;
        else
            u_hat = decoder->decode(llr).u_hat;

        FrameOutcome out;
        std::size_t j = 0;
        for (int i = 0; i < code.block_length && j < payload.size(); ++i) {
            if (code.frozen[static_cast<std::size_t>(i)])
                continue;
            if (u_hat[static_cast<std::size_t>(i)] != payload[j])
                ++out.bit_errors;
            ++j;
        }
        out.frame_error = out.bit_errors > 0;
        return out;
    }
};

template <bool Parallel>
SimPoint run_point(const FrameRunner& runner, const SimConfig& config,
                   std::size_t point_index, double ebn0_db, long time_steps,
                   int workers) {
    const PolarCode& code = runner.code;
    const double rate = static_cast<double>(code.info_length) /
                        static_cast<double>(code.block_length);
    const double sigma = ebn0_to_sigma(ebn0_db, rate);

    const double t0 = now_seconds();
    long frames = 0, frame_errors = 0, bit_errors = 0;
    std::vector<FrameOutcome> outcomes;
    std::string failure;
    while (frames < config.max_frames && frame_errors < config.max_frame_errors) {
        const long chunk = std::min(kChunkFrames, config.max_frames - frames);
        outcomes.assign(static_cast<std::size_t>(chunk), FrameOutcome{});
        if constexpr (Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
            for (long i = 0; i < chunk; ++i) {
                try {
                    outcomes[static_cast<std::size_t>(i)] =
                        runner.run(sigma, point_index, frames + i);
                } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
                    if (failure.empty())
                        failure = "frame " + std::to_string(frames + i) + ": " +
                                  e.what();
                }
            }
        } else {
            for (long i = 0; i < chunk; ++i) {
                try {
                    outcomes[static_cast<std::size_t>(i)] =
                        runner.run(sigma, point_index, frames + i);
                } catch (const std::exception& e) {
                    if (failure.empty())
                        failure = "frame " + std::to_string(frames + i) + ": " +
                                  e.what();
                }
            }
        }
        if (!failure.empty())
            throw std::runtime_error("simulation failed at " + failure);
        for (const auto& o : outcomes) {
            frame_errors += o.frame_error ? 1 : 0;
            bit_errors += o.bit_errors;
        }
        frames += chunk;
    }

    SimPoint p;
    p.decoder = config.decoder;
    p.list_size = runner.dec.sc ? 1 : config.list_size;
    p.pm_mode = config.pm_mode;
    p.ebn0_db = ebn0_db;
    p.frames = frames;
    p.bit_errors = bit_errors;
    p.frame_errors = frame_errors;
    p.ber = static_cast<double>(bit_errors) /
            (static_cast<double>(frames) *
             static_cast<double>(code.payload_length()));
    p.fer = static_cast<double>(frame_errors) / static_cast<double>(frames);
    p.time_steps = static_cast<double>(time_steps);
    p.wall_time_s = now_seconds() - t0;
    return p;
}

long decoder_time_steps(const PolarCode& code, const DecoderSpec& dec, int L) {
    if (dec.sc)
        return 2L * code.block_length - 2;
    Schedule s = dec.algo == Algo::Scl ? build_flat_schedule(code)
                                       : build_schedule(code);
    switch (dec.algo) {
        case Algo::Scl:
            return count_time_steps(s, DecoderKind::Scl, L);
        case Algo::Sscl:
            return count_time_steps(s, DecoderKind::Sscl, L);
        case Algo::FastSscl:
            return count_time_steps(s, DecoderKind::FastSscl, L);
        case Algo::Capped:
            return count_time_steps(s, DecoderKind::FastSscl, dec.cap + 1);
    }
    return 0;
}

int resolve_workers(int workers) {
#ifdef _OPENMP
    if (workers <= 0)
        return omp_get_max_threads();
    return workers;
#else
    (void)workers;
    return 1;
#endif
}

template <bool Parallel>
SimResult run_simulation_impl(const SimConfig& config) {
    PolarCode code = code_from_config(config);
    DecoderSpec dec = parse_decoder(config.decoder);
    if (!dec.sc && config.list_size < 1)
        throw std::invalid_argument("sim config: list_size must be >= 1");

    ListDecodeOptions opt;
    opt.algo = dec.algo;
    opt.cap = dec.cap;
    opt.list_size = config.list_size;
    opt.pm_mode = parse_pm_mode(config.pm_mode);

    std::optional<ListDecoder> list_decoder;
    if (!dec.sc)
        list_decoder.emplace(code, opt);
    FrameRunner runner{code, dec, opt, config.seed,
                       list_decoder ? &*list_decoder : nullptr};
    const long steps = decoder_time_steps(code, dec, config.list_size);
    const int workers = resolve_workers(config.workers);

    SimResult result;
    for (std::size_t pi = 0; pi < config.ebn0_db.size(); ++pi)
        result.points.push_back(run_point<Parallel>(
            runner, config, pi, config.ebn0_db[pi], steps, workers));
    return result;
}

}  // namespace

SimResult run_simulation(const SimConfig& config) {
    return run_simulation_impl<true>(config);
}

SimResult run_simulation_reference(const SimConfig& config) {
    return run_simulation_impl<false>(config);
}

long EquivalenceReport::total_divergences() const {
    long total = 0;
    for (const auto& p : pairs)
        total += p.divergences;
    return total;
}

namespace {

struct FrameView {
    BitVector payload;
    std::vector<double> pms;
};

bool pms_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] - b[i]) > 1e-9)
            return false;
    return true;
}

}  // namespace

EquivalenceReport run_equivalence_campaign(const SimConfig& config,
                                           const std::vector<std::string>& algos) {
    if (algos.size() < 2)
        throw std::invalid_argument("equivalence campaign needs >= 2 decoders");
    PolarCode code = code_from_config(config);

    std::vector<DecoderSpec> decs;
    std::vector<ListDecoder> decoders;
    decs.reserve(algos.size());
    for (const auto& name : algos) {
        DecoderSpec d = parse_decoder(name);
        if (d.sc)
            throw std::invalid_argument(
                "equivalence campaign compares list decoders only");
        decs.push_back(d);
        ListDecodeOptions opt;
        opt.algo = d.algo;
        opt.cap = d.cap;
        opt.list_size = config.list_size;
        opt.pm_mode = parse_pm_mode(config.pm_mode);
        decoders.emplace_back(code, opt);
    }

    EquivalenceReport report;
    bool any_capped = false;
    for (std::size_t a = 0; a < decs.size(); ++a)
        for (std::size_t b = a + 1; b < decs.size(); ++b)
            report.pairs.push_back({decs[a].name, decs[b].name, 0, -1, ""});
    for (const auto& d : decs)
        any_capped = any_capped || d.algo == Algo::Capped;

    const int workers = resolve_workers(config.workers);
    const std::size_t n_algos = decs.size();

    long frames = 0;
    while (frames < config.max_frames) {
        const long chunk = std::min(kChunkFrames, config.max_frames - frames);
        std::vector<std::vector<FrameView>> views(
            static_cast<std::size_t>(chunk));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
        for (long i = 0; i < chunk; ++i) {
            const long frame = frames + i;
            const std::size_t pi =
                static_cast<std::size_t>(frame) % config.ebn0_db.size();
            const double rate = static_cast<double>(code.info_length) /
                                static_cast<double>(code.block_length);
            const double sigma = ebn0_to_sigma(config.ebn0_db[pi], rate);
            const std::uint64_t stream = frame_stream(pi, frame);

            Prng bits_rng(config.seed, 2 * stream);
            BitVector payload(static_cast<std::size_t>(code.payload_length()));
            for (auto& bit : payload)
                bit = bits_rng.bit();
            BitVector u = place_message(code, attach_code_crc(code, payload));
            std::vector<double> y = modulate_bpsk(encode(code, u));
            std::vector<double> r =
                transmit(y, NoiseModel{sigma, config.seed, 2 * stream + 1});
            LlrVector llr = llr_demod(r, sigma);

            auto& per_algo = views[static_cast<std::size_t>(i)];
            per_algo.resize(n_algos);
            for (std::size_t k = 0; k < n_algos; ++k) {
                DecodeResult res = decoders[k].decode(llr);
                BitVector msg = extract_message(code, res.u_hat);
                msg.resize(static_cast<std::size_t>(code.payload_length()));
                per_algo[k] = FrameView{std::move(msg), std::move(res.sorted_pms)};
            }
        }

        for (long i = 0; i < chunk; ++i) {
            const auto& per_algo = views[static_cast<std::size_t>(i)];
            std::size_t pair_idx = 0;
            for (std::size_t a = 0; a < n_algos; ++a) {
                for (std::size_t b = a + 1; b < n_algos; ++b, ++pair_idx) {
                    auto& pair = report.pairs[pair_idx];
                    std::string kind;
                    if (per_algo[a].payload != per_algo[b].payload)
                        kind = "output";
                    else if (!pms_equal(per_algo[a].pms, per_algo[b].pms))
                        kind = "pm";
                    else
                        continue;
                    if (pair.divergences == 0) {
                        pair.first_frame = frames + i;
                        pair.first_kind = kind;
                    }
                    ++pair.divergences;
                }
            }
        }
        frames += chunk;

        if (any_capped) {
            // stop once every capped pairing has produced its witness
            bool all_witnessed = true;
            std::size_t pair_idx = 0;
            for (std::size_t a = 0; a < n_algos; ++a)
                for (std::size_t b = a + 1; b < n_algos; ++b, ++pair_idx)
                    if ((decs[a].algo == Algo::Capped) !=
                        (decs[b].algo == Algo::Capped))
                        all_witnessed =
                            all_witnessed && report.pairs[pair_idx].divergences > 0;
            if (all_witnessed)
                break;
        }
    }
    report.frames = frames;
    return report;
}

std::string to_csv(const SimResult& result) {
    std::ostringstream out;
    out << "decoder,L,pm_mode,ebn0_db,frames,bit_errors,frame_errors,ber,fer,"
           "time_steps\n";
    for (const auto& p : result.points) {
        out << p.decoder << ',' << p.list_size << ',' << p.pm_mode << ','
            << format_double(p.ebn0_db) << ',' << p.frames << ',' << p.bit_errors
            << ',' << p.frame_errors << ',' << format_double(p.ber) << ','
            << format_double(p.fer) << ',' << format_double(p.time_steps)
            << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const SimResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : result.points) {
        rows.push_back(nlohmann::json{{"decoder", p.decoder},
                                      {"L", p.list_size},
                                      {"pm_mode", p.pm_mode},
                                      {"ebn0_db", p.ebn0_db},
                                      {"frames", p.frames},
                                      {"bit_errors", p.bit_errors},
                                      {"frame_errors", p.frame_errors},
                                      {"ber", p.ber},
                                      {"fer", p.fer},
                                      {"time_steps", p.time_steps}});
    }
    return rows;
}

SimResult sim_result_from_json(const nlohmann::json& j) {
    SimResult result;
    for (const auto& row : j) {
        SimPoint p;
        p.decoder = row.at("decoder").get<std::string>();
        p.list_size = row.at("L").get<int>();
        p.pm_mode = row.at("pm_mode").get<std::string>();
        p.ebn0_db = row.at("ebn0_db").get<double>();
        p.frames = row.at("frames").get<long>();
        p.bit_errors = row.at("bit_errors").get<long>();
        p.frame_errors = row.at("frame_errors").get<long>();
        p.ber = row.at("ber").get<double>();
        p.fer = row.at("fer").get<double>();
        p.time_steps = row.at("time_steps").get<double>();
        result.points.push_back(std::move(p));
    }
    return result;
}

std::string to_csv(const std::vector<ReductionRow>& rows) {
    std::ostringstream out;
    out << "L,sc,scl,sscl,fast_sscl,fast_vs_sscl_pct,fast_vs_scl_pct\n";
    for (const auto& r : rows) {
        out << r.list_size << ',' << r.sc << ',' << r.scl << ',' << r.sscl << ','
            << r.fast_sscl << ',' << format_double(r.fast_vs_sscl_pct) << ','
            << format_double(r.fast_vs_scl_pct) << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const std::vector<ReductionRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back(nlohmann::json{{"L", r.list_size},
                                     {"sc", r.sc},
                                     {"scl", r.scl},
                                     {"sscl", r.sscl},
                                     {"fast_sscl", r.fast_sscl},
                                     {"fast_vs_sscl_pct", r.fast_vs_sscl_pct},
                                     {"fast_vs_scl_pct", r.fast_vs_scl_pct}});
    }
    return arr;
}

}  // namespace polar
