// Copyright 2026 The oppshape Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPPSHAPE_PARALLEL_H_
#define OPPSHAPE_PARALLEL_H_

#include <functional>

namespace oppshape {

// Worker count: OPPSHAPE_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
int WorkerCount();

// Calls fn(i) for every i in [0, n), spread over WorkerCount() threads. Work
// items must write to disjoint outputs. The first exception thrown by any item
// is rethrown after all workers finish.
void ParallelFor(int n, const std::function<void(int)>& fn);

}  // namespace oppshape

#endif  // OPPSHAPE_PARALLEL_H_
