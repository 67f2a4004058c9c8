// Copyright 2026 The rsaexh Authors
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

#ifndef RSAEXH_ERRORS_H_
#define RSAEXH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rsaexh {

// Base class for every error raised by the library. name() is the stable
// identifier surfaced by the CLI ("DegenerateMessage", "SchemaError", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what),
        name_(std::move(name)),
        message_(what) {}

  const std::string& name() const { return name_; }
  // what() without the name prefix.
  const std::string& message() const { return message_; }

 private:
  std::string name_;
  std::string message_;
};

#define RSAEXH_DEFINE_ERROR(ErrorName)                 \
  class ErrorName : public Error {                     \
   public:                                             \
    explicit ErrorName(const std::string& what)        \
        : Error(#ErrorName, what) {}                   \
  }

// Invalid argument outside any of the named failure modes below.
RSAEXH_DEFINE_ERROR(InvalidArgument);

// rsa-engine
RSAEXH_DEFINE_ERROR(DegenerateMessage);
RSAEXH_DEFINE_ERROR(AllMessagesUnusable);
RSAEXH_DEFINE_ERROR(UnreachableMessage);

// model-zoo
RSAEXH_DEFINE_ERROR(MissingParameter);

// fitting
RSAEXH_DEFINE_ERROR(NonfiniteLikelihood);

// data-io
RSAEXH_DEFINE_ERROR(SchemaError);
RSAEXH_DEFINE_ERROR(ParseError);

#undef RSAEXH_DEFINE_ERROR

}  // namespace rsaexh

#endif  // RSAEXH_ERRORS_H_
