#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stimg/fibers.hpp"

namespace stimg {

enum class MapKind { JacobianPair, NonConstantJacobian, DegenerateJacobian };

struct MapClassification {
  MultiPoly jacobian;
  MapKind kind = MapKind::DegenerateJacobian;
};

// Exact k-fold composition. Rejects the call when deg(f)^k would pass the
// degree cap; deep membership questions go through chained fiber solving
// instead.
PolyMap iterate_map(const PolyMap& f, int k, int degree_cap = kDefaultDegreeCap);

MapClassification classify(const PolyMap& f);

// Sound, not complete: every certified point really is outside the image, but
// the search may miss coimage points. `exhausted` distinguishes a fully
// explored candidate pattern from a budget-truncated one.
struct CoimageReport {
  std::vector<Point> candidates;
  std::vector<Point> certified_coimage;
  bool exhausted = true;
};

CoimageReport coimage_candidates(const PolyMap& f, const FiberOptions& opts = {});

// Per-level verdicts over the probe universe (closure of the candidates under
// f). chain[k-1] holds the points certified outside f^k(C^2); indeterminate
// points are excluded from certification and listed separately.
struct StabilizationReport {
  std::vector<Point> candidates;
  std::vector<Point> universe;
  std::vector<std::vector<Point>> chain;
  std::vector<std::vector<Point>> indeterminate;
  std::optional<int> K;  // empty: not reached within k_max
  std::string stable_image_note;
};

StabilizationReport stabilization_report(const PolyMap& f, std::vector<Point> candidates,
                                         int k_max, const FiberOptions& opts = {});

struct InjectivityWitness {
  Point first;
  Point second;
  Point common_image;
};

// Scans targets (sorted by height, then lexicographically) for a fiber with
// two distinct rational points. `auto_probe` appends the deterministic grid
// of targets with coordinate height <= 5. A miss is not an injectivity proof.
std::optional<InjectivityWitness> injectivity_witness_search(
    const PolyMap& f, std::vector<Point> targets, bool auto_probe = false,
    const FiberOptions& opts = {});

}  // namespace stimg
