// Copyright 2026 The qrep Authors
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

#include <utility>

#include "qrep/timeline.hpp"

namespace qrep {
namespace {

// Teleports hop by hop along `path`. Each hop u -> v uses photons sent from v
// to u; the confirmation rides on the teleportation message u -> v.
int relay_chain(EventGraph& g, const std::vector<int>& path, const std::vector<Payload>& payload,
                std::vector<int> deps, const std::string& label) {
  int last = -1;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int u = path[i];
    int v = path[i + 1];
    EntLink link = ent_gen(g, u, v, v, payload);
    std::vector<int> d = deps;
    d.push_back(link.photon);
    if (last >= 0) d.push_back(last);
    last = g.message(u, v, d, label, true);
  }
  return last;
}

// Classical (or pre-established-link) return along `path`.
int return_chain(EventGraph& g, const std::vector<int>& path, int dep, const std::string& label) {
  int last = dep;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) last = g.message(path[i], path[i + 1], {last}, label);
  return last;
}

std::vector<int> range(int from, int to) {
  std::vector<int> r;
  if (from <= to) {
    for (int i = from; i <= to; ++i) r.push_back(i);
  } else {
    for (int i = from; i >= to; --i) r.push_back(i);
  }
  return r;
}

std::vector<int> present(std::initializer_list<int> ids) {
  std::vector<int> out;
  for (int id : ids) {
    if (id >= 0) out.push_back(id);
  }
  return out;
}

Schedule roundtrip(const LineTopology& t, int mid, bool direct_return, Payload pa, Payload pb, const std::string& name) {
  EventGraph g(t);
  const int b = t.node_b();
  if (mid < 0 || mid > b) throw TimelineError("middle node out of range");
  // A teleported-back return consumes a second use of every link.
  std::vector<Payload> la{pa};
  std::vector<Payload> lb{pb};
  if (!direct_return) {
    la.push_back(pa);
    lb.push_back(pb);
  }
  int left = relay_chain(g, range(0, mid), la, {}, "teleport");
  int right = relay_chain(g, range(b, mid), lb, {}, "teleport");
  int op = g.local_op(mid, present({left, right}), "apply U");
  if (mid != 0) {
    if (direct_return) {
      g.message(mid, 0, {op}, "return");
    } else {
      return_chain(g, range(mid, 0), op, "teleport back");
    }
  }
  if (mid != b) {
    if (direct_return) {
      g.message(mid, b, {op}, "return");
    } else {
      return_chain(g, range(mid, b), op, "teleport back");
    }
  }
  return g.schedule(name);
}

// Two sequential stages over a single link (no repeaters).
Schedule two_stage_direct(const LineTopology& t, Payload p, bool mirrored, const std::string& name) {
  EventGraph g(t);
  int first = mirrored ? 1 : 0;
  int second = 1 - first;
  EntLink link = ent_gen(g, 0, 1, second, {p});
  int m1 = g.message(first, second, {link.photon}, "stage 1", true);
  g.message(second, first, {m1}, "stage 2");
  return g.schedule(name);
}

Schedule p2_one(const LineTopology& t, bool mirrored, const std::string& name) {
  // A = 0, C = 1, B = 2; ancillas a and b both on C.
  EventGraph g(t);
  auto dir = [&](int from, int to) { return mirrored ? std::pair{to, from} : std::pair{from, to}; };
  auto [pa_s, pa_r] = dir(1, 0);
  EntLink ac = ent_gen(g, 0, 1, pa_s, {Payload::control});
  (void)pa_r;
  auto [m1f, m1t] = dir(0, 1);
  int m1 = g.message(m1f, m1t, {ac.photon}, "controlled shift stage 1", true);
  auto [m2f, m2t] = dir(1, 0);
  g.message(m2f, m2t, {m1}, "controlled shift stage 2");
  auto [pb_s, pb_r] = dir(2, 1);
  EntLink cb = ent_gen(g, 1, 2, pb_s, {Payload::control});
  (void)pb_r;
  int measured = g.local_op(1, {m1}, "measure a");
  auto [m3f, m3t] = dir(1, 2);
  int m3 = g.message(m3f, m3t, {measured, cb.photon}, "controlled V stage 1", true);
  auto [m4f, m4t] = dir(2, 1);
  int m4 = g.message(m4f, m4t, {m3}, "controlled V stage 2");
  int mb = g.local_op(1, {m4}, "measure b");
  g.message(1, 0, {mb}, "phase outcome");
  return g.schedule(name);
}

Schedule p2_two(const LineTopology& t, bool mirrored, const std::string& name) {
  // A = 0, C1 = 1 (ancilla a), C2 = 2 (ancilla b), B = 3.
  EventGraph g(t);
  auto dir = [&](int from, int to) { return mirrored ? std::pair{to, from} : std::pair{from, to}; };
  EntLink ac = ent_gen(g, 0, 1, dir(1, 0).first, {Payload::control});
  auto [m1f, m1t] = dir(0, 1);
  int m1 = g.message(m1f, m1t, {ac.photon}, "controlled shift stage 1", true);
  auto [m2f, m2t] = dir(1, 0);
  g.message(m2f, m2t, {m1}, "controlled shift stage 2");
  EntLink ab = ent_gen(g, 1, 2, 2, {Payload::control});
  int measured = g.local_op(1, {m1}, "measure a");
  int m_ab = g.message(1, 2, {measured, ab.photon}, "shift outcome", true);
  EntLink cb = ent_gen(g, 2, 3, dir(3, 2).first, {Payload::control});
  auto [m3f, m3t] = dir(2, 3);
  int m3 = g.message(m3f, m3t, {m_ab, cb.photon}, "controlled V stage 1", true);
  auto [m4f, m4t] = dir(3, 2);
  int m4 = g.message(m4f, m4t, {m3}, "controlled V stage 2");
  int mb = g.local_op(2, {m4}, "measure b");
  g.message(2, 0, {mb}, "phase outcome");
  return g.schedule(name);
}

Schedule p3_one(const LineTopology& t, const std::string& name) {
  EventGraph g(t);
  EntLink ac = ent_gen(g, 0, 1, 1, {Payload::group});
  EntLink cb = ent_gen(g, 1, 2, 1, {Payload::group});
  int ma = g.message(0, 1, {ac.photon}, "controlled V_A stage 1", true);
  int mb = g.message(2, 1, {cb.photon}, "controlled T_B stage 1", true);
  g.message(1, 0, {ma}, "controlled V_A stage 2");
  g.message(1, 2, {mb}, "controlled T_B stage 2");
  int op = g.local_op(1, {ma, mb}, "measure a, correct b, apply C, measure b");
  g.message(1, 0, {op}, "outcome");
  g.message(1, 2, {op}, "outcome");
  return g.schedule(name);
}

Schedule p3_two(const LineTopology& t, const std::string& name) {
  EventGraph g(t);
  EntLink ac = ent_gen(g, 0, 1, 1, {Payload::group});
  EntLink cb = ent_gen(g, 2, 3, 2, {Payload::group});
  EntLink ab = ent_gen(g, 1, 2, 2, {Payload::group});
  int ma = g.message(0, 1, {ac.photon}, "controlled V_A stage 1", true);
  int mb = g.message(3, 2, {cb.photon}, "controlled T_B stage 1", true);
  g.message(1, 0, {ma}, "controlled V_A stage 2");
  g.message(2, 3, {mb}, "controlled T_B stage 2");
  int meas_a = g.local_op(1, {ma}, "measure a");
  int m_ab = g.message(1, 2, {meas_a, ab.photon}, "fourier outcome", true);
  int op = g.local_op(2, {m_ab, mb}, "correct b, apply C, measure b");
  g.message(2, 0, {op}, "outcome");
  g.message(2, 3, {op}, "outcome");
  return g.schedule(name);
}

Schedule one_round_direct(const LineTopology& t, Payload p, const std::string& name) {
  EventGraph g(t);
  EntLink link = ent_gen(g, 0, 1, 1, {p});
  int ma = g.message(0, 1, {link.photon}, "outcome", true);
  g.message(1, 0, {ma}, "outcome");
  return g.schedule(name);
}

Schedule fast_two(const LineTopology& t, const std::string& name) {
  EventGraph g(t);
  EntLink ac = ent_gen(g, 0, 1, 1, {Payload::group});
  EntLink cb = ent_gen(g, 2, 3, 2, {Payload::group});
  EntLink ab = ent_gen(g, 1, 2, 2, {Payload::group});
  int ma = g.message(0, 1, {ac.photon}, "controlled V_A stage 1", true);
  int mb = g.message(3, 2, {cb.photon}, "controlled T_B stage 1", true);
  g.message(1, 0, {ma}, "controlled V_A stage 2");
  g.message(2, 3, {mb}, "controlled T_B stage 2");
  int conf = g.confirm(1, 2, {ab.photon});
  int meas_a = g.local_op(1, {ma, ab.photon}, "measure a");
  int meas_b = g.local_op(2, {mb, conf}, "apply C, measure b");
  g.message(1, 0, {meas_a}, "outcome a");
  g.message(1, 3, {meas_a}, "outcome a");
  g.message(2, 0, {meas_b}, "outcome b");
  g.message(2, 3, {meas_b}, "outcome b");
  return g.schedule(name);
}

Schedule clifford_two(const LineTopology& t, const std::string& name) {
  EventGraph g(t);
  EntLink ac = ent_gen(g, 0, 1, 1, {Payload::qudit_a, Payload::qudit_a});
  EntLink cb = ent_gen(g, 2, 3, 2, {Payload::qudit_b, Payload::qudit_b});
  EntLink mid = ent_gen(g, 1, 2, 2, {Payload::clifford});
  int ta = g.message(0, 1, {ac.photon}, "teleport", true);
  int tb = g.message(3, 2, {cb.photon}, "teleport", true);
  int conf = g.confirm(1, 2, {mid.photon});
  int m12 = g.message(1, 2, {ta, mid.photon}, "bell outcome");
  int m21 = g.message(2, 1, {tb, conf}, "bell outcome");
  int c1 = g.local_op(1, {m21}, "pauli correction");
  int c2 = g.local_op(2, {m12}, "pauli correction");
  g.message(1, 0, {c1}, "teleport back");
  g.message(2, 3, {c2}, "teleport back");
  return g.schedule(name);
}

Schedule rotation_direct(const LineTopology& t, const std::string& name) {
  EventGraph g(t);
  EntLink link = ent_gen(g, 0, 1, 0, {Payload::bit});
  int m1 = g.message(1, 0, {link.photon}, "parity outcome", true);
  g.message(0, 1, {m1}, "x-basis outcome");
  return g.schedule(name);
}

Schedule rotation_relay(const LineTopology& t, int mid, const std::string& name) {
  EventGraph g(t);
  const int b = t.node_b();
  int theta = relay_chain(g, range(0, mid), {Payload::bit}, {}, "theta state");
  int info = relay_chain(g, range(b, mid), {Payload::bit, Payload::bit}, {}, "parity outcome");
  int op = g.local_op(mid, present({theta, info}), "rotate, measure");
  return_chain(g, range(mid, b), op, "x-basis outcome");
  return g.schedule(name);
}

Schedule p9_stub(const LineTopology& t, const std::string& name) {
  EventGraph g(t);
  if (t.repeaters() == 0) {
    int m = g.message(0, 1, {}, "classical input");
    g.message(1, 0, {m}, "classical output");
  } else {
    int ma = g.message(0, 1, {}, "input");
    int mb = g.message(2, 1, {}, "input");
    int op = g.local_op(1, {ma, mb}, "compute");
    g.message(1, 0, {op}, "output");
    g.message(1, 2, {op}, "output");
  }
  return g.schedule(name);
}

}  // namespace

Schedule build_relay_roundtrip(const LineTopology& topology, int middle, std::string variant) {
  return roundtrip(topology, middle, false, Payload::qudit_a, Payload::qudit_b, variant);
}

Schedule build_one_way_relay(const LineTopology& topology) {
  EventGraph g(topology);
  relay_chain(g, range(0, topology.node_b()), {Payload::qudit_a}, {}, "teleport");
  return g.schedule("one-way relay");
}

Schedule build_schedule(const ProtocolVariant& variant, const LineTopology& topology) {
  topology.validate(false);
  const std::string& f = variant.family;
  const int need = f == "P9" ? variant.stub_n : family_repeaters(f);
  if (f == "P9" && need != 0 && need != 1) throw TimelineError("P9 timing stub supports n = 0 or 1");
  if (topology.repeaters() != need) {
    throw TimelineError("arity mismatch: " + f + " needs " + std::to_string(need) + " repeaters, topology has " +
                        std::to_string(topology.repeaters()));
  }
  const std::string name = variant.name();
  if (f == "P1" || f == "P1.1") return roundtrip(topology, 1, false, Payload::qudit_a, Payload::qudit_b, name);
  if (f == "P1.2" || f == "P1.3") return roundtrip(topology, 2, false, Payload::qudit_a, Payload::qudit_b, name);
  if (f == "P2") return two_stage_direct(topology, Payload::control, false, name);
  if (f == "P4") return two_stage_direct(topology, Payload::control, true, name);
  if (f == "P2.1") return p2_one(topology, false, name);
  if (f == "P4.1") return p2_one(topology, true, name);
  if (f == "P2.2") return p2_two(topology, false, name);
  if (f == "P4.2") return p2_two(topology, true, name);
  if (f == "P3") return two_stage_direct(topology, Payload::group, false, name);
  if (f == "P3.1" || f == "P5.1") return p3_one(topology, name);
  if (f == "P3.2") return p3_two(topology, name);
  if (f == "P3.3" || f == "P5.3") return roundtrip(topology, 2, true, Payload::group, Payload::group, name);
  if (f == "P5" || f == "P6") return one_round_direct(topology, Payload::group, name);
  if (f == "P7") return one_round_direct(topology, Payload::clifford, name);
  if (f == "P5.2" || f == "P6.2") return fast_two(topology, name);
  if (f == "P7.2") return clifford_two(topology, name);
  if (f == "P8") return rotation_direct(topology, name);
  if (f == "P8.1") return rotation_relay(topology, 1, name);
  if (f == "P8.2" || f == "P8.3") return rotation_relay(topology, 2, name);
  if (f == "P9") return p9_stub(topology, name);
  throw TimelineError("unknown variant '" + f + "'");
}

Schedule build_schedule(const ProtocolVariant& variant) {
  std::vector<Rational> pos = variant.positions;
  if (variant.family == "P9" && variant.stub_n == 1 && pos.empty()) pos = {Rational(1, 2)};
  return build_schedule(variant, LineTopology::with_repeaters(pos));
}

Rational schedule_formula_p32(const Rational& x1, const Rational& x2) {
  if (!(Rational(0) < x1 && x1 < x2 && x2 < Rational(1))) throw TimelineError("need 0 < x1 < x2 < 1");
  Rational d = x2 - x1;
  return max(2 * (1 - x2), max(2 * x1, d) + d) + max(x2, 1 - x2);
}

int p22_region(const Rational& x1, const Rational& x2) {
  if (x2 <= 3 * x1) return x1 + 2 * x2 >= Rational(1) ? 1 : 2;
  return 3;
}

Rational schedule_formula_p22(const Rational& x1, const Rational& x2) {
  if (!(Rational(0) < x1 && x1 < x2 && x2 < Rational(1))) throw TimelineError("need 0 < x1 < x2 < 1");
  switch (p22_region(x1, x2)) {
    case 1:
      return 2 + x1;
    case 2:
      return 3 - 2 * x2;
    default:
      if (2 * (x2 - x1) < 1 - x2) return 3 - 2 * x2;
      return 2 + x2 - 2 * x1;
  }
}

}  // namespace qrep
