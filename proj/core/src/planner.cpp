#include "capm/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capm/errors.hpp"

namespace capm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Flat polar candidate set over an annulus. Index = ir * na + ia.
struct FlatCandidates {
  Vec2 center{0.0, 0.0};
  double r_lo = 0.0, r_hi = 0.0;
  int na = 0, nr = 0;
  std::vector<double> xs, ys;

  double radius_of(int ir) const {
    return nr > 1 ? r_lo + (r_hi - r_lo) * ir / (nr - 1)
                  : 0.5 * (r_lo + r_hi);
  }
  double angle_of(int ia) const { return 2.0 * kPi * ia / na; }
};

FlatCandidates polar_candidates(const Annulus& ann, const PolarGrid& g) {
  FlatCandidates c;
  c.center = ann.center;
  c.r_lo = ann.r_inner;
  c.r_hi = ann.r_outer;
  c.na = std::max(1, g.angular_steps);
  c.nr = std::max(2, g.radial_steps);
  c.xs.reserve(static_cast<std::size_t>(c.na) * c.nr);
  c.ys.reserve(static_cast<std::size_t>(c.na) * c.nr);
  for (int ir = 0; ir < c.nr; ++ir) {
    const double r = c.radius_of(ir);
    for (int ia = 0; ia < c.na; ++ia) {
      const double a = c.angle_of(ia);
      c.xs.push_back(ann.center.x() + r * std::cos(a));
      c.ys.push_back(ann.center.y() + r * std::sin(a));
    }
  }
  return c;
}

// Position-only hop cost. The candidate search scores positions; the yaw
// term of the metric is applied when the chosen chain is costed.
inline double pos_cost(double ax, double ay, double bx, double by,
                       const EnergyParams& p) {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double sq = dx * dx + dy * dy;
  if (sq == 0.0) return 0.0;
  const double d =
      p.metric == DistanceMetric::Squared ? sq : std::sqrt(sq);
  return p.alpha + p.gamma * d;
}

inline double pos_cost(const Vec2& a, const Vec2& b, const EnergyParams& p) {
  return pos_cost(a.x(), a.y(), b.x(), b.y(), p);
}

// Via poses take the heading of the incoming segment; zero-length hops keep
// the previous yaw. The end pose is used as given.
std::vector<BodyPose> make_chain(const BodyPose& start,
                                 std::span<const Vec2> vias,
                                 const BodyPose& end) {
  std::vector<BodyPose> chain;
  chain.reserve(vias.size() + 2);
  chain.push_back(start);
  for (const Vec2& v : vias) {
    BodyPose b;
    b.position = v;
    b.body_height = start.body_height;
    const Vec2 d = v - chain.back().position;
    b.yaw = d.norm() > 1e-12 ? std::atan2(d.y(), d.x()) : chain.back().yaw;
    chain.push_back(b);
  }
  chain.push_back(end);
  return chain;
}

double chain_cost(std::span<const BodyPose> chain, const EnergyParams& p) {
  double total = 0.0;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    total += energy_cost(chain[i - 1], chain[i], p);
  }
  return total;
}

// Generic polar-grid minimization with one refinement pass around the
// incumbent. The objective is evaluated in fixed candidate order and ties
// keep the lowest index.
template <typename Obj>
std::pair<Vec2, double> minimize_over(const FlatCandidates& c,
                                      const PolarGrid& g, Obj&& obj) {
  double best = kInf;
  int best_idx = 0;
  const int n = static_cast<int>(c.xs.size());
  for (int i = 0; i < n; ++i) {
    const double v = obj(c.xs[i], c.ys[i], best);
    if (v < best) {
      best = v;
      best_idx = i;
    }
  }
  Vec2 best_pos(c.xs[best_idx], c.ys[best_idx]);

  const int ref = std::max(1, g.refine_factor);
  const int ia = best_idx % c.na;
  const int ir = best_idx / c.na;
  const double a0 = c.angle_of(ia);
  const double r0 = c.radius_of(ir);
  const double da = 2.0 * kPi / c.na;
  const double dr = c.nr > 1 ? (c.r_hi - c.r_lo) / (c.nr - 1) : 0.0;
  for (int j = -ref; j <= ref; ++j) {
    const double r = std::clamp(r0 + dr * j / ref, c.r_lo, c.r_hi);
    for (int i = -ref; i <= ref; ++i) {
      if (i == 0 && j == 0) continue;
      const double a = a0 + da * i / ref;
      const double x = c.center.x() + r * std::cos(a);
      const double y = c.center.y() + r * std::sin(a);
      const double v = obj(x, y, best);
      if (v < best) {
        best = v;
        best_pos = Vec2(x, y);
      }
    }
  }
  return {best_pos, best};
}

// Best manipulation stop for a fixed observation stop: min over x3 of
// c(x1, x3) + c(x3, end). Costs to the end pose are precomputed.
struct InnerLowerSolver {
  const FlatCandidates* cands;
  std::vector<double> cost_to_end;
  double min_cost_to_end = kInf;
  const EnergyParams* energy;
  const PolarGrid* polar;

  InnerLowerSolver(const FlatCandidates& c, const Vec2& end,
                   const EnergyParams& e, const PolarGrid& g)
      : cands(&c), energy(&e), polar(&g) {
    cost_to_end.resize(c.xs.size());
    for (std::size_t j = 0; j < c.xs.size(); ++j) {
      cost_to_end[j] = pos_cost(c.xs[j], c.ys[j], end.x(), end.y(), e);
      min_cost_to_end = std::min(min_cost_to_end, cost_to_end[j]);
    }
  }

  double best_value(double x1x, double x1y) const {
    double best = kInf;
    const std::size_t n = cands->xs.size();
    const double* xs = cands->xs.data();
    const double* ys = cands->ys.data();
    const double* te = cost_to_end.data();
    for (std::size_t j = 0; j < n; ++j) {
      const double v = pos_cost(x1x, x1y, xs[j], ys[j], *energy) + te[j];
      if (v < best) best = v;
    }
    return best;
  }

  std::pair<Vec2, double> best_point(const Vec2& x1, const Vec2& end) const {
    auto [pos, val] =
        minimize_over(*cands, *polar, [&](double x, double y, double) {
          return pos_cost(x1, Vec2(x, y), *energy) +
                 pos_cost(Vec2(x, y), end, *energy);
        });
    return {pos, val};
  }
};

EePose aim_at(const Vec3& position, const Vec3& target) {
  const Vec3 axis = (target - position).normalized();
  return EePose{position, axis};
}

struct PlanPieces {
  std::vector<BodyPose> chain;  // start, vias..., end
  std::optional<EePose> ee_obs;
  std::optional<EePose> ee_manip;
};

Plan assemble_plan(Branch branch, const PlanPieces& p, double expected) {
  Plan plan;
  plan.branch = branch;
  plan.expected_cost = expected;
  int k = 0;
  auto push = [&](KeyStateKind kind, const BodyPose& body,
                  std::optional<EePose> ee, TaskLabel label) {
    plan.states.push_back(KeyState{k++, kind, body, std::move(ee), label});
  };

  const auto& chain = p.chain;
  push(KeyStateKind::BodyMove, chain.front(), std::nullopt, TaskLabel::Transit);
  switch (branch) {
    case Branch::NoObservation: {
      const BodyPose& x1 = chain[1];
      push(KeyStateKind::BodyMove, x1, std::nullopt, TaskLabel::Transit);
      push(KeyStateKind::ArmManipulate, x1, p.ee_manip,
           TaskLabel::Manipulation);
      push(KeyStateKind::ArmHold, x1, p.ee_manip, TaskLabel::Manipulation);
      push(KeyStateKind::BodyMove, chain.back(), std::nullopt,
           TaskLabel::Transit);
      plan.x1 = x1.position;
      break;
    }
    case Branch::Upper: {
      const BodyPose& x1 = chain[1];
      push(KeyStateKind::BodyMove, x1, std::nullopt, TaskLabel::Transit);
      push(KeyStateKind::ArmPerceive, x1, p.ee_obs,
           TaskLabel::ActivePerception);
      push(KeyStateKind::ArmManipulate, x1, p.ee_manip,
           TaskLabel::Manipulation);
      push(KeyStateKind::ArmHold, x1, p.ee_manip, TaskLabel::Manipulation);
      push(KeyStateKind::BodyMove, chain.back(), std::nullopt,
           TaskLabel::Transit);
      plan.x1 = x1.position;
      break;
    }
    case Branch::Lower: {
      const BodyPose& x1 = chain[1];
      const BodyPose& x3 = chain[2];
      push(KeyStateKind::BodyMove, x1, std::nullopt, TaskLabel::Transit);
      push(KeyStateKind::ArmPerceive, x1, p.ee_obs,
           TaskLabel::ActivePerception);
      push(KeyStateKind::BodyMove, x3, std::nullopt, TaskLabel::Transit);
      push(KeyStateKind::ArmManipulate, x3, p.ee_manip,
           TaskLabel::Manipulation);
      push(KeyStateKind::ArmHold, x3, p.ee_manip, TaskLabel::Manipulation);
      push(KeyStateKind::BodyMove, chain.back(), std::nullopt,
           TaskLabel::Transit);
      plan.x1 = x1.position;
      plan.x3 = x3.position;
      break;
    }
  }
  return plan;
}

double realized_from_states(const Plan& plan, const EnergyParams& e) {
  double total = 0.0;
  for (std::size_t i = 1; i < plan.states.size(); ++i) {
    total += energy_cost(plan.states[i - 1].body, plan.states[i].body, e);
  }
  return total;
}

}  // namespace

int Plan::body_move_count() const {
  int n = 0;
  for (const KeyState& s : states) {
    if (s.time_index > 0 && s.kind == KeyStateKind::BodyMove) ++n;
  }
  return n;
}

Mat2 sigma_for(double r_w, SigmaMode mode) {
  const double v = mode == SigmaMode::Squared ? r_w * r_w : r_w;
  return v * Mat2::Identity();
}

MpoiDistribution PlannerContext::mpoi_distribution(const Troi& troi) const {
  MpoiDistribution d;
  d.mean = troi.center_xy();
  d.covariance = sigma_for(troi.radius, sigma_mode);
  d.truncate_to_troi = sigma_truncate;
  return d;
}

PlannerContext finalize_context(PlannerContext ctx) {
  ctx.rm_shape =
      compute_rm(Vec2(0.0, 0.0), ctx.arm, ctx.task, ctx.search,
                 ctx.body_height);
  return ctx;
}

Vec3 stow_position(const BodyPose& body, const ArmModel& arm) {
  const Vec3 shoulder = shoulder_position(body, arm);
  const double c = std::cos(body.yaw);
  const double s = std::sin(body.yaw);
  // Tucked carry pose: slightly forward of and below the shoulder.
  return shoulder + Vec3(0.25 * c, 0.25 * s, -0.30);
}

std::optional<EePose> find_nsv_ee(const BodyPose& body, const Troi& troi,
                                  const PlannerContext& ctx) {
  const Vec3 stow = stow_position(body, ctx.arm);
  const Vec3 target = troi.center;
  for (int level = 0; level <= ctx.search.refine_levels; ++level) {
    double best = kInf;
    std::optional<EePose> best_ee;
    visit_ee_candidates(body, troi.center_xy(), ctx.arm, ctx.search, level,
                        [&](const Vec3& pos) {
                          EePose ee = aim_at(pos, target);
                          if (nsv_indicator(ee, ctx.camera, troi, ctx.task)) {
                            const double d = (pos - stow).squaredNorm();
                            if (d < best) {
                              best = d;
                              best_ee = ee;
                            }
                          }
                          return false;  // keep scanning for the closest
                        });
    if (best_ee) return best_ee;
  }
  return std::nullopt;
}

std::optional<EePose> find_epmc_ee(const BodyPose& body, const Vec2& target,
                                   const PlannerContext& ctx) {
  const Vec3 stow = stow_position(body, ctx.arm);
  const Vec3 target3(target.x(), target.y(), 0.0);
  const Mpoi mpoi{target3};
  for (int level = 0; level <= ctx.search.refine_levels; ++level) {
    double best = kInf;
    std::optional<EePose> best_ee;
    visit_ee_candidates(body, target, ctx.arm, ctx.search, level,
                        [&](const Vec3& pos) {
                          EePose ee = aim_at(pos, target3);
                          if (epmc_indicator(ee, mpoi, ctx.task)) {
                            const double d = (pos - stow).squaredNorm();
                            if (d < best) {
                              best = d;
                              best_ee = ee;
                            }
                          }
                          return false;
                        });
    if (best_ee) return best_ee;
  }
  // Dense in-plane sweep of the manipulation distance band; covers regions
  // whose feasible pocket falls between candidate grid lines.
  const Vec2 offset = body.position - target;
  const double rho = offset.norm();
  const Vec2 dir = rho > 1e-12 ? Vec2(offset / rho) : Vec2(1.0, 0.0);
  const double e_lo = std::sqrt(ctx.task.eps_min);
  const double e_hi = std::sqrt(ctx.task.eps_max);
  double best = kInf;
  std::optional<EePose> best_ee;
  for (int i = 0; i < 64; ++i) {
    const double e = e_lo + (e_hi - e_lo) * (i + 0.5) / 64.0;
    for (int j = 0; j < 128; ++j) {
      const double phi = kPi * (j + 0.5) / 128.0;  // elevation in (0, pi)
      const double u = e * std::cos(phi);
      const Vec3 pos(target.x() + u * dir.x(), target.y() + u * dir.y(),
                     e * std::sin(phi));
      if (!ee_reachable(body, pos, ctx.arm)) continue;
      EePose ee = aim_at(pos, target3);
      if (!epmc_indicator(ee, mpoi, ctx.task)) continue;
      const double d = (pos - stow).squaredNorm();
      if (d < best) {
        best = d;
        best_ee = ee;
      }
    }
  }
  return best_ee;
}

Plan plan_deterministic(const BodyPose& start, const BodyPose& end,
                        const Troi& troi, const Annulus& rm,
                        const PlannerContext& ctx) {
  if (rm.empty) throw InfeasibleRegion("manipulation region is empty");
  const FlatCandidates cands = polar_candidates(rm, ctx.polar);
  auto [x1, value] = minimize_over(
      cands, ctx.polar, [&](double x, double y, double) {
        return pos_cost(start.position.x(), start.position.y(), x, y,
                        ctx.energy) +
               pos_cost(x, y, end.position.x(), end.position.y(), ctx.energy);
      });
  (void)value;

  PlanPieces pieces;
  const Vec2 vias[] = {x1};
  pieces.chain = make_chain(start, vias, end);
  pieces.ee_manip = find_epmc_ee(pieces.chain[1], troi.center_xy(), ctx);
  Plan plan = assemble_plan(Branch::NoObservation, pieces,
                            chain_cost(pieces.chain, ctx.energy));
  return plan;
}

Plan plan_decoupled(const BodyPose& start, const BodyPose& end,
                    const Troi& troi, const Annulus& ro,
                    const Annulus& rm_center, const PlannerContext& ctx) {
  if (ro.empty) throw InfeasibleRegion("observation region is empty");
  if (rm_center.empty) throw InfeasibleRegion("manipulation region is empty");
  const FlatCandidates c1 = polar_candidates(ro, ctx.polar);
  const FlatCandidates c3 = polar_candidates(rm_center, ctx.polar);
  const InnerLowerSolver inner(c3, end.position, ctx.energy, ctx.polar);
  const Vec2 s = start.position;

  auto [x1, value] = minimize_over(
      c1, ctx.polar, [&](double x, double y, double bound) {
        const double c0 = pos_cost(s.x(), s.y(), x, y, ctx.energy);
        if (c0 + inner.min_cost_to_end >= bound) return kInf;
        return c0 + inner.best_value(x, y);
      });
  (void)value;
  auto [x3, lower] = inner.best_point(x1, end.position);
  (void)lower;

  PlanPieces pieces;
  const Vec2 vias[] = {x1, x3};
  pieces.chain = make_chain(start, vias, end);
  pieces.ee_obs = find_nsv_ee(pieces.chain[1], troi, ctx);
  pieces.ee_manip = find_epmc_ee(pieces.chain[2], troi.center_xy(), ctx);
  return assemble_plan(Branch::Lower, pieces,
                       chain_cost(pieces.chain, ctx.energy));
}

Plan plan_capm(const BodyPose& start, const BodyPose& end, const Troi& troi,
               const Annulus& ro, const Annulus& rm_shape,
               const MpoiDistribution& dist, const PlannerContext& ctx,
               RngStream& rng) {
  if (ro.empty) throw InfeasibleRegion("observation region is empty");
  if (rm_shape.empty) throw InfeasibleRegion("manipulation region is empty");
  const Annulus rm_center = rm_shape.translated(troi.center_xy());
  const std::vector<Vec2> samples =
      draw_mpoi_samples(dist, troi, ctx.mc_samples, rng);
  const FlatCandidates c1 = polar_candidates(ro, ctx.polar);
  const FlatCandidates c3 = polar_candidates(rm_center, ctx.polar);
  const InnerLowerSolver inner(c3, end.position, ctx.energy, ctx.polar);
  const Vec2 s = start.position;
  const Vec2 e = end.position;

  BodyPose probe;
  probe.body_height = start.body_height;
  auto objective = [&](double x, double y, double bound) {
    const double c0 = pos_cost(s.x(), s.y(), x, y, ctx.energy);
    const double cu = pos_cost(x, y, e.x(), e.y(), ctx.energy);
    // Whatever p turns out to be, the objective is at least this much.
    if (c0 + std::min(cu, inner.min_cost_to_end) >= bound) return kInf;
    probe.position = Vec2(x, y);
    const double p = p_feasible_over_samples(probe, samples, rm_shape);
    if (p >= 1.0) return c0 + cu;
    if (c0 + p * cu + (1.0 - p) * inner.min_cost_to_end >= bound) return kInf;
    const double cl = inner.best_value(x, y);
    return c0 + p * cu + (1.0 - p) * cl;
  };
  auto [x1, value] = minimize_over(c1, ctx.polar, objective);
  (void)value;
  auto [x3, lower] = inner.best_point(x1, end.position);
  (void)lower;

  probe.position = x1;
  const double p_star = p_feasible_over_samples(probe, samples, rm_shape);
  const Branch planned_branch = p_star >= 0.5 ? Branch::Upper : Branch::Lower;

  PlanPieces pieces;
  double expected = 0.0;
  if (planned_branch == Branch::Upper) {
    const Vec2 vias[] = {x1};
    pieces.chain = make_chain(start, vias, end);
    const double c0 = energy_cost(pieces.chain[0], pieces.chain[1], ctx.energy);
    const double cu = energy_cost(pieces.chain[1], pieces.chain[2], ctx.energy);
    // The lower-branch continuation is still priced by its planned stop.
    const Vec2 lower_vias[] = {x1, x3};
    auto lower_chain = make_chain(start, lower_vias, end);
    const double cl = chain_cost(lower_chain, ctx.energy) - c0;
    expected = c0 + p_star * cu + (1.0 - p_star) * cl;
  } else {
    const Vec2 vias[] = {x1, x3};
    pieces.chain = make_chain(start, vias, end);
    const double c0 = energy_cost(pieces.chain[0], pieces.chain[1], ctx.energy);
    const double cl = chain_cost(pieces.chain, ctx.energy) - c0;
    const Vec2 upper_vias[] = {x1};
    auto upper_chain = make_chain(start, upper_vias, end);
    const double cu = chain_cost(upper_chain, ctx.energy) - c0;
    expected = c0 + p_star * cu + (1.0 - p_star) * cl;
  }
  pieces.ee_obs = find_nsv_ee(pieces.chain[1], troi, ctx);
  pieces.ee_manip = find_epmc_ee(
      planned_branch == Branch::Upper ? pieces.chain[1] : pieces.chain[2],
      troi.center_xy(), ctx);
  Plan plan = assemble_plan(planned_branch, pieces, expected);
  plan.x3 = x3;  // the planned fallback stop, kept even for a direct plan
  return plan;
}

BodyPose replan_manipulation(const BodyPose& current, const BodyPose& end,
                             const Mpoi& mpoi, const PlannerContext& ctx,
                             const Annulus* rm_shape_hint) {
  const Annulus rm =
      rm_shape_hint
          ? rm_shape_hint->translated(mpoi.point_xy())
          : compute_rm(mpoi.point_xy(), ctx.arm, ctx.task, ctx.search,
                       ctx.body_height);
  if (rm.empty) throw InfeasibleRegion("manipulation region is empty");
  const FlatCandidates cands = polar_candidates(rm, ctx.polar);
  auto [best, value] = minimize_over(
      cands, ctx.polar, [&](double x, double y, double) {
        return pos_cost(current.position.x(), current.position.y(), x, y,
                        ctx.energy) +
               pos_cost(x, y, end.position.x(), end.position.y(), ctx.energy);
      });
  // Staying put wins whenever the current pose is already feasible and at
  // least as cheap; it costs no start energy.
  if (rm.contains(current.position)) {
    const double stay = pos_cost(current.position, end.position, ctx.energy);
    if (stay <= value) {
      BodyPose out = current;
      return out;
    }
  }
  BodyPose out;
  out.position = best;
  out.body_height = current.body_height;
  const Vec2 d = best - current.position;
  out.yaw = d.norm() > 1e-12 ? std::atan2(d.y(), d.x()) : current.yaw;
  return out;
}

Plan execute_trial(PlannerKind kind, const TrialScene& scene,
                   const PlannerContext& ctx, RngStream& rng,
                   const Annulus* ro_hint) {
  const Vec2 center = scene.troi.center_xy();
  const Annulus rm_center = ctx.rm_shape.translated(center);
  const Mpoi& truth = scene.mpoi;
  const Annulus rm_truth = ctx.rm_shape.translated(truth.point_xy());

  if (kind == PlannerKind::Deterministic) {
    Plan plan =
        plan_deterministic(scene.start, scene.end, scene.troi, rm_center, ctx);
    const bool held =
        plan.states[2].ee &&
        epmc_indicator(*plan.states[2].ee, truth, ctx.task) == 1;
    plan.success = held && mtc_check(ctx.task.xi, held, ctx.task) == 1;
    plan.realized_cost = realized_from_states(plan, ctx.energy);
    return plan;
  }

  const Annulus ro =
      ro_hint ? *ro_hint
              : compute_ro(scene.troi, ctx.arm, ctx.camera, ctx.task,
                           ctx.search, ctx.body_height);
  Plan plan;
  if (kind == PlannerKind::Decoupled) {
    plan = plan_decoupled(scene.start, scene.end, scene.troi, ro, rm_center,
                          ctx);
  } else {
    const MpoiDistribution dist = ctx.mpoi_distribution(scene.troi);
    plan = plan_capm(scene.start, scene.end, scene.troi, ro, ctx.rm_shape,
                     dist, ctx, rng);
  }
  const Vec2 x1 = plan.x1;
  std::optional<Vec2> planned_x3 = plan.x3;

  BodyPose x1_pose;
  x1_pose.position = x1;
  x1_pose.body_height = scene.start.body_height;
  {
    const Vec2 d = x1 - scene.start.position;
    x1_pose.yaw =
        d.norm() > 1e-12 ? std::atan2(d.y(), d.x()) : scene.start.yaw;
  }

  // Observation: the region computation promised a sufficient view here.
  const std::optional<EePose> ee_obs = find_nsv_ee(x1_pose, scene.troi, ctx);
  if (!ee_obs) {
    throw ObservationFailed(
        "no end-effector pose at the observation stop satisfies the view "
        "condition");
  }

  PlanPieces pieces;
  Branch realized;
  std::optional<EePose> ee_manip;
  const bool upper_feasible =
      kind == PlannerKind::Capm && rm_truth.contains(x1);
  if (upper_feasible) {
    realized = Branch::Upper;
    const Vec2 vias[] = {x1};
    pieces.chain = make_chain(scene.start, vias, scene.end);
    ee_manip = find_epmc_ee(pieces.chain[1], truth.point_xy(), ctx);
  } else {
    realized = Branch::Lower;
    // The planned manipulation stop survives when it still satisfies the
    // revealed region; otherwise the stop is re-planned from here.
    Vec2 x3;
    if (planned_x3 && rm_truth.contains(*planned_x3)) {
      x3 = *planned_x3;
    } else {
      x3 = replan_manipulation(x1_pose, scene.end, truth, ctx, &ctx.rm_shape)
               .position;
    }
    const Vec2 vias[] = {x1, x3};
    pieces.chain = make_chain(scene.start, vias, scene.end);
    ee_manip = find_epmc_ee(pieces.chain[2], truth.point_xy(), ctx);
  }
  pieces.ee_obs = ee_obs;
  pieces.ee_manip = ee_manip;

  Plan executed = assemble_plan(realized, pieces, plan.expected_cost);
  executed.x1 = x1;
  if (realized != Branch::Lower) {
    executed.x3 = std::nullopt;
  }
  const bool held =
      ee_manip && epmc_indicator(*ee_manip, truth, ctx.task) == 1;
  executed.success = held && mtc_check(ctx.task.xi, held, ctx.task) == 1;
  executed.realized_cost = realized_from_states(executed, ctx.energy);
  return executed;
}

const char* planner_name(PlannerKind k) {
  switch (k) {
    case PlannerKind::Deterministic: return "a";
    case PlannerKind::Decoupled: return "b";
    case PlannerKind::Capm: return "c";
  }
  return "?";
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::Upper: return "upper";
    case Branch::Lower: return "lower";
    case Branch::NoObservation: return "no_observation";
  }
  return "?";
}

}  // namespace capm
