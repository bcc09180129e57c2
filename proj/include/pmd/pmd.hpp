#pragma once

#include "pmd/ballot_io.hpp"
#include "pmd/detect_bucklin.hpp"
#include "pmd/detect_maximin.hpp"
#include "pmd/detect_scoring.hpp"
#include "pmd/detection.hpp"
#include "pmd/dispatch.hpp"
#include "pmd/election.hpp"
#include "pmd/errors.hpp"
#include "pmd/generators.hpp"
#include "pmd/oracle.hpp"
#include "pmd/report.hpp"
#include "pmd/rules.hpp"
