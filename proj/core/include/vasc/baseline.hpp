// Copyright 2026 The vasc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <set>
#include <utility>

#include "vasc/aead.hpp"
#include "vasc/bytes.hpp"
#include "vasc/crypto_ctx.hpp"
#include "vasc/errors.hpp"
#include "vasc/group.hpp"
#include "vasc/hash.hpp"
#include "vasc/proposed.hpp"
#include "vasc/rng.hpp"
#include "vasc/timestamp.hpp"

// Baseline scheme the smart-card design is compared against: anonymous
// authentication over F_p with per-request Diffie-Hellman key agreement.
// Only registration, login, and the four-step authentication exist here;
// the original defers its data phase elsewhere.
namespace vasc::baseline {

using proposed::VehicleId;

// Identity masked under H0 of the shared secret; fixed 32-byte width.
using MaskedId = std::array<std::uint8_t, 32>;

// Vehicle ids enter the xor-mask pipeline at a fixed 32-byte width:
// truncated beyond 32 bytes, zero-padded on the right otherwise.
MaskedId pad_id(const VehicleId& id);

struct Card {
    VehicleId id;
    Digest k;  // H0(id xor s), the registration secret
    SystemParams params;
};

struct AuthRequest {
    Bigint ephemeral;  // D = g^alpha mod p
    MaskedId aid;
    Digest didv;
    Digest cv;
    Timestamp t;

    Bytes serialize(const SystemParams& params) const;
    static AuthRequest deserialize(ByteView frame);
};

struct ForwardedRequest {
    Bytes rsu_id;
    AuthRequest request;

    Bytes serialize(const SystemParams& params) const;
    static ForwardedRequest deserialize(ByteView frame);
};

struct AuthResponse {
    MaskedId aid;
    Digest confirm;     // C = H1(shared, E, k)
    Bigint ta_ephemeral;  // G = g^beta mod p

    Bytes serialize(const SystemParams& params) const;
    static AuthResponse deserialize(ByteView frame);
};

class Ta {
  public:
    Ta(SystemParams params, TaGroupSecrets secrets, std::uint64_t freshness_window_ms);

    Card register_vehicle(const VehicleId& id);

    // Recovers the registration secret from the masked identity, checks
    // both verifier hashes, and answers with its half of the key exchange.
    std::pair<AuthResponse, SymmetricKey> handle_auth(const AuthRequest& req,
                                                      Timestamp now, Rng& rng);

    const SystemParams& params() const { return params_; }
    CryptoCtx& crypto() { return crypto_; }

  private:
    SystemParams params_;
    TaGroupSecrets secrets_;
    std::uint64_t freshness_window_ms_;
    CryptoCtx crypto_;
    std::set<VehicleId> registered_;
};

class Rsu {
  public:
    Rsu(Bytes id, std::uint64_t freshness_window_ms);

    // Freshness gate plus identity concatenation; no priced crypto.
    ForwardedRequest forward(const AuthRequest& req, Timestamp now);

    const Bytes& id() const { return id_; }
    CryptoCtx& crypto() { return crypto_; }

  private:
    Bytes id_;
    std::uint64_t freshness_window_ms_;
    CryptoCtx crypto_;
};

class Obu {
  public:
    explicit Obu(Card card);

    AuthRequest make_request(Rng& rng, Timestamp now);
    // Verifies the confirmation hash, then derives the session key.
    SymmetricKey complete(const AuthResponse& resp);

    const std::optional<SymmetricKey>& session_key() const { return session_key_; }
    CryptoCtx& crypto() { return crypto_; }

  private:
    struct Pending {
        Bigint alpha;
        Bigint shared_e;  // E = y^alpha mod p
        MaskedId aid;
        Timestamp t;
    };

    Card card_;
    std::optional<Pending> pending_;
    std::optional<SymmetricKey> session_key_;
    CryptoCtx crypto_;
};

}  // namespace vasc::baseline
