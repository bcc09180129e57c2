#pragma once

#include <string>

#include "pmd/ballot_io.hpp"

namespace fixtures {

inline pmd::ElectionInstance e1() {
  return pmd::parse_election("candidates: a,b,c\na>c>b\nb>a>c\nb>a>c\n");
}
inline pmd::ElectionInstance e2() {
  return pmd::parse_election("candidates: a,b,c\na>b>c\na>c>b\nb>a>c\n");
}
inline pmd::ElectionInstance e3() {
  return pmd::parse_election("candidates: a,b,c\na>b>c\nb>a>c\nc>a>b\n");
}
inline pmd::ElectionInstance e4() {
  return pmd::parse_election("candidates: a,b,c\na>c>b\na>b>c\nb>c>a\nb>a>c\n");
}
inline pmd::ElectionInstance e5() {
  return pmd::parse_election("candidates: a,b,c\n2x a>c>b\n3x b>a>c\n");
}
inline pmd::ElectionInstance e6() {
  return pmd::parse_election(
      "candidates: a,b,y\ntiebreak: y,a,b\na>b>y\na>b>y\nb>y>a\ny>a>b\n");
}

inline pmd::Preference pref(const pmd::ElectionInstance& e, const std::string& text) {
  std::string line = "candidates: ";
  for (std::size_t i = 0; i < e.candidate_count(); ++i)
    line += (i ? "," : "") + e.name(static_cast<pmd::CandidateId>(i));
  return pmd::parse_election(line + "\n" + text + "\n").ballot(0);
}

}  // namespace fixtures
