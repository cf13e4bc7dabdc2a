#pragma once

#include "mfib/io.hpp"

namespace mfib::cmd {

using io::json;

enum class Status { Ok = 0, False = 1, Budget = 2, Invalid = 3, Error = 4 };

// body: verdict, checks, witnesses, budget_events, outputs (files to emit).
struct Report {
  Status status = Status::Ok;
  json body;
};

Report validate_diagram(const CDiagram& D);
Report basis(const CDiagram& D);
Report fibration_check(const Fibration& p, int dim);
Report minimal_model(const Fibration& p, int dim, long long budget);
// dim < 0 skips the Kan check.
Report tcp_build(const SSet& B, const GroupAction& A, const TwistingFunction& t, int dim);
Report twisting_verify(const SSet& B, const SimplicialGroup& G, const TwistingFunction& t);
Report twisting_classify(const SSet& B, const SimplicialGroup& G, int dim, long long budget);
Report wbar(const SimplicialGroup& G, int dim);
Report atlas_normalize(const io::AtlasInput& in);
Report atlas_regularize(const io::AtlasInput& in, long long budget);
Report classify_bundles(const SSet& B, const GroupAction& A, int dim, long long budget);

}  // namespace mfib::cmd
