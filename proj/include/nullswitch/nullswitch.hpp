#pragma once

#include "nullswitch/complexity.hpp"
#include "nullswitch/constellation.hpp"
#include "nullswitch/error.hpp"
#include "nullswitch/fft.hpp"
#include "nullswitch/harness.hpp"
#include "nullswitch/layout.hpp"
#include "nullswitch/random.hpp"
#include "nullswitch/receiver.hpp"
#include "nullswitch/signal.hpp"
#include "nullswitch/switching.hpp"
