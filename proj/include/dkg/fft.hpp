#pragma once

#include "dkg/types.hpp"

namespace dkg {

enum class FftDir { forward, inverse };

/**
 * In-place 3D transforms on `howmany` contiguous blocks of n^3 coefficients.
 * Forward divides by n^3 (yielding e^{+i k.x} expansion coefficients),
 * inverse is the plain sum. Plans are cached; execution is thread safe.
 */
void dft3(cdouble* data, int n, int howmany, FftDir dir);

/**
 * In-place 1D transforms along the slow axis of a [nt][count] array, one
 * transform per column. Forward divides by nt.
 */
void dft_time(cdouble* data, int nt, long count, FftDir dir);

}  // namespace dkg
