// Copyright 2026 The coadapt Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "coadapt/report.h"

#include <iomanip>

namespace coadapt {
namespace {

const char* YesNo(bool value) { return value ? "yes" : "no"; }

}  // namespace

void WriteRunCsv(const ExperimentReport& report, std::ostream& out) {
  out << "trial,T,cumulative_loss,comparator_min,regret\n";
  for (const auto& t : report.trials) {
    out << t.trial << ',' << t.horizon << ',' << FormatDouble(t.cumulative_loss)
        << ',' << FormatDouble(t.comparator_min) << ','
        << FormatDouble(t.regret) << '\n';
  }
}

void WriteEpsCsv(const ExperimentReport& report, std::ostream& out) {
  out << "trial,t,intention,comparator_state,eps\n";
  for (const auto& t : report.trials) {
    for (std::size_t k = 0; k < t.eps.eps.size(); ++k) {
      out << t.trial << ',' << k + 1 << ',' << t.intentions.at(k) << ','
          << t.eps.comparator_states.at(k + 1) << ','
          << FormatDouble(t.eps.eps[k]) << '\n';
    }
  }
}

void WriteMixingCsv(const MixingProfile& profile, std::ostream& out) {
  out << "i,j,eta\n";
  for (int i = 1; i <= profile.horizon; ++i) {
    for (int j = i + 1; j <= profile.horizon; ++j) {
      out << i << ',' << j << ',' << FormatDouble(profile.Eta(i, j)) << '\n';
    }
  }
}

void WriteBoundCsv(const BoundValidationReport& report, std::ostream& out) {
  out << "epsilon,exceedances,trials,empirical_frequency,standard_error,bound\n";
  for (const auto& r : report.rows) {
    out << FormatDouble(r.epsilon) << ',' << r.exceedances << ',' << r.trials
        << ',' << FormatDouble(r.empirical_frequency) << ','
        << FormatDouble(r.standard_error) << ',' << FormatDouble(r.bound)
        << '\n';
  }
}

void WriteSweepCsv(SweepParameter parameter, const std::vector<SweepRow>& rows,
                   std::ostream& out) {
  out << "parameter,value,mean_regret,mean_margin,m_t,deviation,"
         "outperform_fraction,certified_fraction\n";
  const auto name = SweepParameterName(parameter);
  for (const auto& r : rows) {
    out << name << ',' << FormatDouble(r.value) << ','
        << FormatDouble(r.mean_regret) << ',' << FormatDouble(r.mean_margin)
        << ',' << FormatDouble(r.m_t) << ',' << FormatDouble(r.deviation) << ','
        << FormatDouble(r.outperform_fraction) << ','
        << FormatDouble(r.certified_fraction) << '\n';
  }
}

void WriteRunSummary(const ExperimentReport& report, std::ostream& out) {
  const auto& s = report.summary;
  out << "trials:                 " << s.trials << '\n'
      << "horizon:                " << report.horizon << '\n'
      << "mean cumulative loss:   " << FormatDouble(s.mean_cumulative_loss) << '\n'
      << "mean comparator min:    " << FormatDouble(s.mean_comparator_min) << '\n'
      << "regret mean/min/max:    " << FormatDouble(s.mean_regret) << " / "
      << FormatDouble(s.min_regret) << " / " << FormatDouble(s.max_regret) << '\n'
      << "fraction R_T < 0:       " << FormatDouble(s.outperform_fraction) << '\n'
      << "M_T:                    " << FormatDouble(report.mixing.m_t) << '\n'
      << "deviation term:         " << FormatDouble(report.deviation) << '\n'
      << "certificate holds in:   " << FormatDouble(s.certified_fraction)
      << " of trials\n";
}

void WriteCertificateSummary(const ExperimentReport& report, std::ostream& out) {
  const auto& s = report.summary;
  out << "delta:                  " << FormatDouble(report.delta) << '\n'
      << "lipschitz:              " << FormatDouble(report.lipschitz) << '\n'
      << "M_T:                    " << FormatDouble(report.mixing.m_t) << '\n'
      << "horizon:                " << report.horizon << '\n'
      << "deviation:              " << FormatDouble(report.deviation) << '\n';
  for (const auto& t : report.trials) {
    const auto& c = t.certificate;
    out << "trial " << t.trial << ": empirical_loss=" << FormatDouble(c.empirical_loss)
        << " deviation=" << FormatDouble(c.deviation)
        << " eps_sum=" << FormatDouble(c.eps_sum)
        << " margin=" << FormatDouble(c.margin) << " holds=" << YesNo(c.holds)
        << " comparator_min=" << FormatDouble(t.comparator_min)
        << " outperformed=" << YesNo(t.regret < 0.0) << '\n';
  }
  out << "certified fraction:     " << FormatDouble(s.certified_fraction) << '\n'
      << "outperform fraction:    " << FormatDouble(s.outperform_fraction) << '\n'
      << "outperform | certified: "
      << FormatDouble(s.certified_outperform_fraction) << '\n';
}

void WriteMixingSummary(const MixingProfile& profile, std::ostream& out) {
  out << "eta (row i, column j):\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (int i = 1; i <= profile.horizon; ++i) {
    for (int j = 1; j <= profile.horizon; ++j) {
      if (j > i) {
        out << std::setw(10) << profile.Eta(i, j);
      } else {
        out << std::setw(10) << "-";
      }
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
  out << "row sums:";
  for (double r : profile.row_sums) out << ' ' << FormatDouble(r);
  out << "\nM_T: " << FormatDouble(profile.m_t) << '\n';
}

void WriteBoundSummary(const BoundValidationReport& report, std::ostream& out) {
  out << "horizon: " << report.horizon
      << "  E[psi]: " << FormatDouble(report.expected_psi)
      << "  lipschitz: " << FormatDouble(report.lipschitz)
      << "  M_T: " << FormatDouble(report.m_t) << '\n';
  for (const auto& r : report.rows) {
    out << "eps=" << FormatDouble(r.epsilon)
        << "  freq=" << FormatDouble(r.empirical_frequency)
        << "  se=" << FormatDouble(r.standard_error)
        << "  bound=" << FormatDouble(r.bound) << '\n';
  }
}

}  // namespace coadapt
