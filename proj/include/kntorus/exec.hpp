#pragma once

namespace kntorus {

// Table sweeps come in two flavours: a plain serial loop kept as the reference,
// and an OpenMP loop that must produce bit-identical output.
enum class Exec { serial, parallel };

}  // namespace kntorus
