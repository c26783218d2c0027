#pragma once

// JSON forms of the library's reports. Infinite γ is written as "inf".

#include "json.hpp"

#include "isolat/convex.hpp"
#include "isolat/discrepancy.hpp"
#include "isolat/distance.hpp"
#include "isolat/lattice.hpp"
#include "isolat/reduction.hpp"
#include "isolat/volume.hpp"

namespace isolat {

using Json = nlohmann::ordered_json;

Json gamma_json(double gamma);
double gamma_from_json(const Json& j);

void to_json(Json& j, const IntegrationLattice& lat);
void to_json(Json& j, const SpectralReport& r);
void to_json(Json& j, const VolumeEstimate& v);
void to_json(Json& j, const ConvexBody& k);
void to_json(Json& j, const DiscrepancyWitness& w);
void to_json(Json& j, const Thm1Report& r);
void to_json(Json& j, const CoveringRadius& r);
void to_json(Json& j, const DistanceNormReport& r);
void to_json(Json& j, const Prop1Report& r);
void to_json(Json& j, const ProxySpec& s);
void to_json(Json& j, const HyperplaneFamily& f);

/// {"variant": "ball", "center": [...], "radius": r} and likewise "box"
/// (lower, upper), "hpolytope" (normals, offsets), "vpolytope" (vertices).
ConvexBody body_from_json(const Json& j);

}  // namespace isolat
