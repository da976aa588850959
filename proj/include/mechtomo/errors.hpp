// Copyright 2026 The mechtomo Authors
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

#ifndef MECHTOMO_ERRORS_HPP
#define MECHTOMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mechtomo {

// Base class for all library failures so callers can distinguish them from
// generic std exceptions when mapping to process exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument or unusable configuration (maps to usage exit code 2).
struct ArgumentError : Error {
    using Error::Error;
};

// Fock cutoff too small for the requested object.
struct TruncationError : Error {
    using Error::Error;
};

// Grid extent/resolution insufficient (aliasing, kernel wider than grid, ...).
struct ResolutionError : Error {
    using Error::Error;
};

// Request would need to move an ordering parameter the wrong way
// (deconvolution instead of convolution).
struct OrderingError : Error {
    using Error::Error;
};

// A numerical routine could not reach its accuracy contract.
struct AccuracyError : Error {
    using Error::Error;
};

// Filesystem / serialization failure (maps to exit code 4).
struct IoError : Error {
    using Error::Error;
};

}  // namespace mechtomo

#endif
