#pragma once

#include <optional>
#include <vector>

#include "capm/energy.hpp"
#include "capm/uncertainty.hpp"

namespace capm {

enum class KeyStateKind { BodyMove, ArmPerceive, ArmManipulate, ArmHold };
enum class TaskLabel { ActivePerception, Manipulation, Transit };
enum class Branch { Upper, Lower, NoObservation };
enum class PlannerKind { Deterministic, Decoupled, Capm };  // a, b, c

struct KeyState {
  int time_index = 0;
  KeyStateKind kind = KeyStateKind::BodyMove;
  BodyPose body;
  std::optional<EePose> ee;
  TaskLabel task_label = TaskLabel::Transit;
};

/// Ordered key-state sequence. The first state is the start state; body
/// moves are the BodyMove states with time_index > 0 (an Upper-branch plan
/// has two, Lower three, NoObservation two). x1/x3 duplicate the planned
/// decision variables for reporting.
struct Plan {
  std::vector<KeyState> states;
  Branch branch = Branch::NoObservation;
  double expected_cost = 0.0;
  std::optional<double> realized_cost;
  std::optional<bool> success;
  Vec2 x1{0.0, 0.0};
  std::optional<Vec2> x3;

  int body_move_count() const;
};

/// One simulated task instance. The MPOI is hidden from the planners until
/// the observation step of the executor.
struct TrialScene {
  BodyPose start;
  BodyPose end;
  Troi troi;
  Mpoi mpoi;
};

/// Deterministic polar candidate grid over an annulus, with one refinement
/// pass around the incumbent.
struct PolarGrid {
  int angular_steps = 64;
  int radial_steps = 16;
  int refine_factor = 4;
};

enum class SigmaMode { Linear, Squared };

/// Covariance of the MPOI estimate for a TROI radius: r_w * I (Linear) or
/// r_w^2 * I (Squared).
Mat2 sigma_for(double r_w, SigmaMode mode);

/// Static models shared by all planner calls of one experiment. rm_shape is
/// the manipulation region about an arbitrary target; it is
/// translation-invariant under the shell arm model and is computed once.
struct PlannerContext {
  CameraModel camera;
  ArmModel arm;
  TaskParams task;
  EnergyParams energy;
  SearchGrid search;
  PolarGrid polar;
  double body_height = 0.8;
  int mc_samples = 2000;
  SigmaMode sigma_mode = SigmaMode::Squared;
  bool sigma_truncate = true;
  Annulus rm_shape;

  MpoiDistribution mpoi_distribution(const Troi& troi) const;
};

/// Fills ctx.rm_shape from the models.
PlannerContext finalize_context(PlannerContext ctx);

/// Planner a: trusts the TROI center as the MPOI and plans a single stop in
/// the manipulation region. Throws InfeasibleRegion when rm is empty.
Plan plan_deterministic(const BodyPose& start, const BodyPose& end,
                        const Troi& troi, const Annulus& rm,
                        const PlannerContext& ctx);

/// Planner b: observation stop in ro, manipulation stop in rm about the TROI
/// center, jointly minimized with the upper branch ruled out.
Plan plan_decoupled(const BodyPose& start, const BodyPose& end,
                    const Troi& troi, const Annulus& ro,
                    const Annulus& rm_center, const PlannerContext& ctx);

/// Planner c: minimizes c0 + p*c_u + (1-p)*c_l with the manipulation
/// feasibility probability estimated by a sample average shared across all
/// candidates (common random numbers from `rng`).
Plan plan_capm(const BodyPose& start, const BodyPose& end, const Troi& troi,
               const Annulus& ro, const Annulus& rm_shape,
               const MpoiDistribution& dist, const PlannerContext& ctx,
               RngStream& rng);

/// Post-observation repositioning: cheapest manipulation stop for the now
/// known MPOI. Returns x_current itself when it already lies in the region.
BodyPose replan_manipulation(const BodyPose& current, const BodyPose& end,
                             const Mpoi& mpoi, const PlannerContext& ctx,
                             const Annulus* rm_shape_hint = nullptr);

/// Plans with the chosen planner and simulates the trial against the hidden
/// MPOI, filling realized_cost, success, and the realized branch. ro_hint
/// may carry a precomputed observation region for the scene's TROI.
Plan execute_trial(PlannerKind kind, const TrialScene& scene,
                   const PlannerContext& ctx, RngStream& rng,
                   const Annulus* ro_hint = nullptr);

/// Observation/manipulation end-effector selection used by the planners and
/// the executor: feasible candidate of minimal displacement from the stow
/// pose, escalating through the refinement grids.
std::optional<EePose> find_nsv_ee(const BodyPose& body, const Troi& troi,
                                  const PlannerContext& ctx);
std::optional<EePose> find_epmc_ee(const BodyPose& body, const Vec2& target,
                                   const PlannerContext& ctx);
Vec3 stow_position(const BodyPose& body, const ArmModel& arm);

const char* planner_name(PlannerKind k);   // "a", "b", "c"
const char* branch_name(Branch b);         // "upper", "lower", "no_observation"

}  // namespace capm
