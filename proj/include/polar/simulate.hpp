#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "polar/channel.hpp"
#include "polar/code.hpp"
#include "polar/list_decoder.hpp"
#include "polar/sc_decoder.hpp"

namespace polar {

// Decoder selector as written on the command line: "sc", "scl", "sscl",
// "fast-sscl" or "capped:T".
struct DecoderSpec {
    bool sc = false;
    Algo algo = Algo::FastSscl;
    int cap = 2;
    std::string name;
};

DecoderSpec parse_decoder(const std::string& text);
PmMode parse_pm_mode(const std::string& text);

struct SimConfig {
    int n = 6;
    int K = 32;
    double design_ebn0_db = 2.0;
    std::string method = "gaussian-approx";  // or "bhattacharyya"
    std::string frozen_file;                 // when set, overrides n/K construction
    std::string crc_name = "none";
    std::string decoder = "fast-sscl";
    int list_size = 1;
    std::string pm_mode = "exact";
    std::vector<double> ebn0_db = {2.0};
    long max_frames = 10000;
    long max_frame_errors = 100;
    std::uint64_t seed = 1;
    int workers = 1;  // 0 = all available threads
    std::string format = "csv";
};

SimConfig sim_config_from_json(const nlohmann::json& j);
nlohmann::json sim_config_to_json(const SimConfig& config);

// Builds the code a config describes (construction or frozen-set file).
PolarCode code_from_config(const SimConfig& config);

struct SimPoint {
    std::string decoder;
    int list_size = 1;
    std::string pm_mode;
    double ebn0_db = 0.0;
    long frames = 0;
    long bit_errors = 0;
    long frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double time_steps = 0.0;  // per frame; fixed by the schedule
    double wall_time_s = 0.0; // measurement only, not part of equality
};

bool operator==(const SimPoint& a, const SimPoint& b);

struct SimResult {
    std::vector<SimPoint> points;
};

bool operator==(const SimResult& a, const SimResult& b);

// Seeded Monte-Carlo FER/BER campaign. Frames are processed in fixed-size
// chunks with one RNG stream per frame index, so results are identical for
// any worker count; the error-cap early stop is evaluated at chunk
// boundaries only.
SimResult run_simulation(const SimConfig& config);

// Sequential reference implementation of the same loop (no OpenMP); used by
// tests and the benchmark to validate the parallel path.
SimResult run_simulation_reference(const SimConfig& config);

struct DivergencePair {
    std::string algo_a;
    std::string algo_b;
    long divergences = 0;
    long first_frame = -1;
    std::string first_kind;  // "output" or "pm"
};

struct EquivalenceReport {
    long frames = 0;
    std::vector<DivergencePair> pairs;
    long total_divergences() const;
};

// Decodes every frame with all listed decoders on identical LLRs and compares
// selected outputs (exact) and sorted path metrics (1e-9). Stops early once
// every pair involving a capped decoder has found a witness divergence.
EquivalenceReport run_equivalence_campaign(const SimConfig& config,
                                           const std::vector<std::string>& algos);

// CSV columns: decoder,L,pm_mode,ebn0_db,frames,bit_errors,frame_errors,
// ber,fer,time_steps
std::string to_csv(const SimResult& result);
nlohmann::json to_json(const SimResult& result);
SimResult sim_result_from_json(const nlohmann::json& j);

std::string to_csv(const std::vector<ReductionRow>& rows);
nlohmann::json to_json(const std::vector<ReductionRow>& rows);

}  // namespace polar
