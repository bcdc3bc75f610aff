#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace batchcode {

// AG(2,q): the q^2 points of F_q^2 identified by vector index, and the
// q^2 + q lines, each stored as its sorted point-index set.  Lines
// y = a*x + b come first, ordered by (a, b); verticals x = c follow,
// ordered by c.
struct AffinePlane {
  uint32_t q = 0;
  std::vector<std::vector<uint32_t>> lines;
};

AffinePlane affine_plane(const Field& f);

enum class CertMethod { Claimed, BruteForce };

struct CertifiedL {
  uint32_t level = 0;
  CertMethod method = CertMethod::Claimed;
};

// A collection of ell-dimensional subspaces of F_q^(2*ell+1) intended to be
// pairwise trivially intersecting, with every off-subspace coset of a member
// meeting at most `level` members.  `certified` is an upper bound on that
// level: construction claims are tagged Claimed, exhaustive checks
// BruteForce.  Consumers must not treat a Claimed level as verified.
struct NiceCollection {
  Field field;
  uint32_t ell = 0;
  std::vector<Subspace> subspaces;
  std::optional<CertifiedL> certified;

  uint32_t m() const { return static_cast<uint32_t>(subspaces.size()); }
  uint32_t ambient_dim() const { return 2 * ell + 1; }
};

// Moment-vector construction: block i spans the ell vectors
// (1, t, t^2, ..., t^(2*ell)) at t = alpha^(ell*i + j), j in [0, ell).
// Default m = floor((q-1)/ell), the largest block count with all exponents
// distinct (alpha has order q-1).  With include_zero_block and ell = 1 the
// extra direction span{(1, 0, ..., 0)} — the moment vector at t = 0 — is
// appended.  The result carries certified = {ell, Claimed}.
NiceCollection construction1(const Field& f, uint32_t ell, std::optional<uint32_t> m_requested = {},
                             bool include_zero_block = false);

// Keeps the first m members; an existing certified level remains a valid
// upper bound for the subcollection.
NiceCollection take_prefix(const NiceCollection& c, uint32_t m);

// Every member has dim == ell and every pair meets trivially.
bool check_pairwise(const NiceCollection& c);

// Exact L* = max over members V_i and cosets v + V_i with v outside V_i of
// the number of members the coset meets.  Upgrades c.certified to
// {L*, BruteForce}.  Budget caps the q^(2*ell+1) point enumeration.
uint32_t check_niceness(NiceCollection& c, uint64_t point_budget = 1'000'000);

struct MaxNiceResult {
  uint32_t m_max = 0;
  NiceCollection witness;
};

// Largest collection of ell-dim subspaces of F_q^(2*ell+1) that is pairwise
// trivial and whose off cosets each meet at most `level` members, found by
// branch-and-bound over all candidate subspaces.
MaxNiceResult max_nice_collection(const Field& f, uint32_t ell, uint32_t level,
                                  uint64_t node_budget = 1u << 20);

// Text format: header "NICE v1 q=<q> ell=<ell> m=<m> L=<level|unchecked>",
// then m blocks of ell basis rows (space-separated element codes).  Only a
// brute-force level is written; a numeric L reads back as BruteForce.
std::string collection_to_string(const NiceCollection& c);
NiceCollection collection_from_string(const std::string& text);
void write_collection(const NiceCollection& c, const std::string& path);
NiceCollection read_collection(const std::string& path);

}  // namespace batchcode
