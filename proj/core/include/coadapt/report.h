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


#ifndef COADAPT_REPORT_H_
#define COADAPT_REPORT_H_

// Plain-text and CSV emitters. Every CSV starts with a header row and numbers
// are written as shortest round-trip decimals, so identical results produce
// identical bytes.

#include <ostream>
#include <string>
#include <vector>

#include "coadapt/certificate.h"
#include "coadapt/experiment.h"
#include "coadapt/mixing.h"

namespace coadapt {

// trial,T,cumulative_loss,comparator_min,regret
void WriteRunCsv(const ExperimentReport& report, std::ostream& out);

// trial,t,intention,comparator_state,eps. Needs a report run with details.
void WriteEpsCsv(const ExperimentReport& report, std::ostream& out);

// i,j,eta for 1 <= i < j <= T.
void WriteMixingCsv(const MixingProfile& profile, std::ostream& out);

// epsilon,exceedances,trials,empirical_frequency,standard_error,bound
void WriteBoundCsv(const BoundValidationReport& report, std::ostream& out);

// parameter,value,mean_regret,mean_margin,m_t,deviation,outperform_fraction,
// certified_fraction
void WriteSweepCsv(SweepParameter parameter, const std::vector<SweepRow>& rows,
                   std::ostream& out);

void WriteRunSummary(const ExperimentReport& report, std::ostream& out);
void WriteCertificateSummary(const ExperimentReport& report, std::ostream& out);
void WriteMixingSummary(const MixingProfile& profile, std::ostream& out);
void WriteBoundSummary(const BoundValidationReport& report, std::ostream& out);

}  // namespace coadapt

#endif  // COADAPT_REPORT_H_
