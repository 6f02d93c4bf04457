/*------------------------------------------------------------------------
Error codes shared by all modules

Copyright 2026 wproc contributors

Licensed under the Apache License,
Version 2.0(the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
--------------------------------------------------------------------------*/
#pragma once

#include <stdexcept>
#include <string>

namespace wproc {

enum class ErrorCode {
	SingularMatrix,
	RankDeficient,
	ShapeMismatch,
	LengthMismatch,
	ParseError,
	InvalidKernel,
	PhaseOutOfRange,
	PhaseOrderViolation,
	MissingDecision,
	MissingLayer,
	GroupMismatch,
	TooLarge,
	UnknownKernel
};

inline const char *error_name(ErrorCode c)
{
	switch (c) {
	case ErrorCode::SingularMatrix: return "SingularMatrix";
	case ErrorCode::RankDeficient: return "RankDeficient";
	case ErrorCode::ShapeMismatch: return "ShapeMismatch";
	case ErrorCode::LengthMismatch: return "LengthMismatch";
	case ErrorCode::ParseError: return "ParseError";
	case ErrorCode::InvalidKernel: return "InvalidKernel";
	case ErrorCode::PhaseOutOfRange: return "PhaseOutOfRange";
	case ErrorCode::PhaseOrderViolation: return "PhaseOrderViolation";
	case ErrorCode::MissingDecision: return "MissingDecision";
	case ErrorCode::MissingLayer: return "MissingLayer";
	case ErrorCode::GroupMismatch: return "GroupMismatch";
	case ErrorCode::TooLarge: return "TooLarge";
	case ErrorCode::UnknownKernel: return "UnknownKernel";
	}
	return "Unknown";
}

class Error : public std::runtime_error {
public:
	Error(ErrorCode code, const std::string &what)
	    : std::runtime_error(std::string(error_name(code)) + ": " + what), m_code(code)
	{
	}
	ErrorCode code() const { return m_code; }

private:
	ErrorCode m_code;
};

} // namespace wproc
