#pragma once

#include <charconv>
#include <ostream>
#include <span>
#include <string>

#include "groomsim/attachment.hpp"
#include "groomsim/calibration.hpp"
#include "groomsim/event.hpp"
#include "groomsim/ledger.hpp"
#include "groomsim/powerlaw.hpp"
#include "groomsim/regression.hpp"
#include "groomsim/simulation.hpp"
#include "groomsim/volume.hpp"

namespace groomsim {

// Shortest round-trip decimal representation; keeps outputs byte-stable.
inline std::string double_to_string(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

inline void write_event_csv(std::ostream& out,
                            std::span<const InteractionEvent> events,
                            const IdTable& ids) {
  out << kEventCsvHeader << '\n';
  for (const auto& e : events)
    out << e.day << ',' << ids.name(e.groomer) << ',' << ids.name(e.groomee)
        << ',' << double_to_string(e.volume) << '\n';
}

inline void write_audit_csv(std::ostream& out,
                            std::span<const SpendRecord> audit,
                            const IdTable& ids) {
  out << "step,groomer,spent,actions\n";
  for (const auto& r : audit)
    out << r.step << ',' << ids.name(r.groomer) << ','
        << double_to_string(r.spent) << ',' << r.actions << '\n';
}

inline void write_summaries_csv(std::ostream& out,
                                std::span<const UserSummary> summaries,
                                const IdTable& ids) {
  out << "user,partners,mean_strength,active_days\n";
  for (const auto& s : summaries)
    out << ids.name(s.user) << ',' << s.partners << ','
        << double_to_string(s.mean_strength) << ',' << s.active_days << '\n';
}

inline void write_powerlaw_csv(std::ostream& out, const PowerLawFit& fit) {
  out << "exponent,xmin,n\n";
  out << double_to_string(fit.exponent) << ',' << fit.x_min << ','
      << fit.n_tail << '\n';
}

inline void write_attachment_csv(std::ostream& out,
                                 const AttachmentCurve& curve) {
  out << "d,p,n\n";
  for (const auto& pt : curve.points)
    out << pt.strength << ',' << double_to_string(pt.probability) << ','
        << pt.observations << '\n';
}

inline void write_regression_csv(std::ostream& out,
                                 const RegressionResult& res) {
  out << "coef,estimate,se,t,p\n";
  out << "a," << double_to_string(res.a) << ',' << double_to_string(res.se_a)
      << ',' << double_to_string(res.t_a_vs_1) << ','
      << double_to_string(res.p_a) << '\n';
  out << "b," << double_to_string(res.b) << ',' << double_to_string(res.se_b)
      << ',' << double_to_string(res.t_b_vs_0) << ','
      << double_to_string(res.p_b) << '\n';
  out << "sigma," << double_to_string(res.residual_sigma) << ",,,\n";
  out << "adj_r_squared," << double_to_string(res.adj_r_squared) << ",,,\n";
  out << "n," << res.n << ",,,\n";
}

inline void write_volume_csv(std::ostream& out, const VolumeTable& table) {
  out << "key,percentile,value,n\n";
  for (const auto& row : table.rows)
    out << double_to_string(row.key) << ',' << row.label << ','
        << double_to_string(row.value) << ',' << row.n << '\n';
}

inline void write_calibration_csv(std::ostream& out,
                                  const CalibrationResult& res) {
  out << "alpha,beta,mse\n";
  for (const auto& p : res.trace)
    out << double_to_string(p.alpha) << ',' << double_to_string(p.beta) << ','
        << double_to_string(p.mse) << '\n';
  out << double_to_string(res.alpha) << ',' << double_to_string(res.beta)
      << ',' << double_to_string(res.objective) << '\n';
}

inline void write_sweep_csv(std::ostream& out,
                            std::span<const SweepRow> rows) {
  out << "alpha,a_mean,a_sd,plexp_mean,plexp_sd\n";
  for (const auto& r : rows)
    out << double_to_string(r.alpha) << ',' << double_to_string(r.a_mean)
        << ',' << double_to_string(r.a_sd) << ','
        << double_to_string(r.plexp_mean) << ','
        << double_to_string(r.plexp_sd) << '\n';
}

}  // namespace groomsim
