// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "vasc/errors.hpp"
#include "vasc/sim.hpp"
#include "vasc/wire.hpp"

namespace vasc::sim {

namespace {

// Identical content for both units so the payload bytes themselves carry
// no distinguishing handle.
constexpr std::string_view kProbeTraffic = "road hazard ahead";

// Virtual time given to each protocol step; generously above the
// worst-case round trip under the default latencies.
constexpr std::uint64_t kSettleMs = 500;

// Longest-common-substring pairs evaluated per class; a cap keeps large
// probes bounded while the statistics stay meaningful.
constexpr std::size_t kMaxLcsPairs = 1500;

struct SessionObs {
    std::size_t owner = 0;
    Bytes blob;  // concatenated protocol frames of the session
};

std::size_t lcs_length(ByteView a, ByteView b) {
    std::vector<std::uint32_t> prev(b.size() + 1, 0);
    std::vector<std::uint32_t> cur(b.size() + 1, 0);
    std::size_t best = 0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
            best = std::max<std::size_t>(best, cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

std::size_t repeated_pairs(const std::vector<Digest>& values) {
    std::map<Digest, std::size_t> counts;
    for (const Digest& v : values) {
        counts[v] += 1;
    }
    std::size_t pairs = 0;
    for (const auto& [value, count] : counts) {
        pairs += count * (count - 1) / 2;
    }
    return pairs;
}

LcsStats lcs_over(const std::vector<const SessionObs*>& left,
                  const std::vector<const SessionObs*>& right, bool same_vector) {
    LcsStats out;
    double total = 0.0;
    for (std::size_t i = 0; i < left.size() && out.pairs < kMaxLcsPairs; ++i) {
        const std::size_t j_begin = same_vector ? i + 1 : 0;
        for (std::size_t j = j_begin; j < right.size() && out.pairs < kMaxLcsPairs; ++j) {
            const std::size_t len =
                lcs_length(ByteView(left[i]->blob), ByteView(right[j]->blob));
            out.min = out.pairs == 0 ? len : std::min(out.min, len);
            out.max = std::max(out.max, len);
            total += static_cast<double>(len);
            out.pairs += 1;
        }
    }
    if (out.pairs > 0) {
        out.mean = total / static_cast<double>(out.pairs);
    }
    return out;
}

}  // namespace

std::string LinkabilityReport::summary() const {
    std::ostringstream out;
    out << "linkability probe: " << sessions_per_obu << " sessions per unit, "
        << sessions_observed << " observed\n";
    out << "repeated fields across sessions: aid=" << repeated_aid
        << " uac=" << repeated_uac << " sigma=" << repeated_sigma << "\n";
    out << "identity bytes on the air: " << (identity_bytes_found ? "YES" : "no") << "\n";
    out << std::fixed << std::setprecision(1);
    out << "longest common substring, same unit:  pairs=" << same_obu.pairs
        << " min=" << same_obu.min << " mean=" << same_obu.mean
        << " max=" << same_obu.max << "\n";
    out << "longest common substring, cross unit: pairs=" << cross_obu.pairs
        << " min=" << cross_obu.min << " mean=" << cross_obu.mean
        << " max=" << cross_obu.max << "\n";
    out << "figures are for inspection; overlapping ranges mean no trivial"
           " linking handle\n";
    return out.str();
}

LinkabilityReport linkability_probe(Simulator& sim, const std::string& obu_a,
                                    const std::string& obu_b,
                                    std::size_t sessions_per_obu) {
    const std::vector<std::string> rsus = sim.rsu_names();
    if (rsus.empty()) {
        fail(Err::kConfigError, "the probe needs at least one roadside unit");
    }
    for (const std::string* name : {&obu_a, &obu_b}) {
        if (!sim.obu_registered(*name)) {
            fail(Err::kNotRegistered, "'" + *name + "' holds no card");
        }
        if (!sim.obu_logged_in(*name)) {
            fail(Err::kNotLoggedIn, "'" + *name + "' is not logged in");
        }
    }
    const std::string& rsu = rsus.front();
    const Bytes id_a = to_bytes(obu_a);
    const Bytes id_b = to_bytes(obu_b);
    const Bytes traffic = to_bytes(kProbeTraffic);

    LinkabilityReport report;
    report.sessions_per_obu = sessions_per_obu;

    std::vector<SessionObs> sessions;
    std::vector<Digest> aids;
    std::vector<Digest> uacs;
    std::vector<Digest> sigmas;
    std::size_t cursor = sim.adversary_capture().size();

    for (std::size_t s = 0; s < sessions_per_obu; ++s) {
        for (std::size_t owner = 0; owner < 2; ++owner) {
            const std::string& name = owner == 0 ? obu_a : obu_b;
            sim.authenticate(name, rsu);
            sim.run_until(Timestamp{sim.now().ms + kSettleMs});
            sim.send_traffic(name, ByteView(traffic));
            sim.run_until(Timestamp{sim.now().ms + kSettleMs});

            // The driver knows whom it triggered; the bytes must not.
            SessionObs obs;
            obs.owner = owner;
            const Transcript& tr = sim.adversary_capture();
            for (std::size_t i = cursor; i < tr.size(); ++i) {
                const Bytes& payload = tr[i].payload;
                if (contains_bytes(ByteView(payload), ByteView(id_a)) ||
                    contains_bytes(ByteView(payload), ByteView(id_b))) {
                    report.identity_bytes_found = true;
                }
                switch (peek_tag(ByteView(payload))) {
                    case WireTag::kAuthRequest: {
                        const auto req = proposed::AuthRequest::deserialize(ByteView(payload));
                        aids.push_back(req.aid);
                        uacs.push_back(req.uac);
                        obs.blob.insert(obs.blob.end(), payload.begin(), payload.end());
                        break;
                    }
                    case WireTag::kRsuAuthResponse:
                        obs.blob.insert(obs.blob.end(), payload.begin(), payload.end());
                        break;
                    case WireTag::kTrafficMessage: {
                        const auto tm =
                            proposed::TrafficMessage::deserialize(ByteView(payload));
                        sigmas.push_back(tm.mac);
                        obs.blob.insert(obs.blob.end(), payload.begin(), payload.end());
                        break;
                    }
                    default:
                        // Notifications cover many senders; they are not
                        // part of any one session's transcript.
                        break;
                }
            }
            cursor = tr.size();
            sessions.push_back(std::move(obs));
        }
    }

    report.sessions_observed = sessions.size();
    report.repeated_aid = repeated_pairs(aids);
    report.repeated_uac = repeated_pairs(uacs);
    report.repeated_sigma = repeated_pairs(sigmas);

    std::vector<const SessionObs*> of_a;
    std::vector<const SessionObs*> of_b;
    for (const SessionObs& obs : sessions) {
        (obs.owner == 0 ? of_a : of_b).push_back(&obs);
    }
    const LcsStats same_a = lcs_over(of_a, of_a, true);
    const LcsStats same_b = lcs_over(of_b, of_b, true);
    LcsStats same;
    same.pairs = same_a.pairs + same_b.pairs;
    if (same.pairs > 0) {
        same.min = same_a.pairs == 0   ? same_b.min
                   : same_b.pairs == 0 ? same_a.min
                                       : std::min(same_a.min, same_b.min);
        same.max = std::max(same_a.max, same_b.max);
        same.mean = (same_a.mean * static_cast<double>(same_a.pairs) +
                     same_b.mean * static_cast<double>(same_b.pairs)) /
                    static_cast<double>(same.pairs);
    }
    report.same_obu = same;
    report.cross_obu = lcs_over(of_a, of_b, false);
    return report;
}

}  // namespace vasc::sim
