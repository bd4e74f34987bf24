#ifndef NCWARING_NCWARING_HPP
#define NCWARING_NCWARING_HPP

#include "ncwaring/analysis.hpp"
#include "ncwaring/bench.hpp"
#include "ncwaring/errors.hpp"
#include "ncwaring/eval.hpp"
#include "ncwaring/json_io.hpp"
#include "ncwaring/ncpoly.hpp"
#include "ncwaring/parse.hpp"
#include "ncwaring/symmetric_cpd.hpp"
#include "ncwaring/tensor.hpp"
#include "ncwaring/waring.hpp"
#include "ncwaring/word.hpp"

#endif // NCWARING_NCWARING_HPP
