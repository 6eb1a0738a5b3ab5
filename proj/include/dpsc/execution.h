// Copyright 2026 The DPSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPSC_EXECUTION_H_
#define DPSC_EXECUTION_H_

namespace dpsc {

// Kernels that loop over independent trials or repetitions come in two
// flavours. kSerial is the reference; kParallel distributes the loop with
// OpenMP. Both produce bit-identical results because every iteration owns
// its own RNG stream.
enum class Execution { kSerial, kParallel };

// Number of OpenMP threads available to kParallel kernels.
int MaxThreads();

}  // namespace dpsc

#endif  // DPSC_EXECUTION_H_
