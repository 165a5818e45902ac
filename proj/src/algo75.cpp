#include "splitpack/algo75.hpp"

#include <algorithm>
#include <set>

#include "splitpack/nextfit.hpp"

namespace splitpack {

namespace {

const Rational kOne(1);

// Bins of the last NEXT FIT group: the step-3 bins if there are any,
// otherwise the step-6 bins.
std::vector<std::size_t> trailing_group(const Packing& p) {
  for (BinLabel label : {BinLabel::S3, BinLabel::S6}) {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < p.bin_count(); ++b) {
      if (p.bin(b).label == label) out.push_back(b);
    }
    if (!out.empty()) return out;
  }
  return {};
}

std::vector<std::size_t> bins_labeled(const Packing& p, BinLabel label) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < p.bin_count(); ++b) {
    if (p.bin(b).label == label) out.push_back(b);
  }
  return out;
}

// Items of `bins`, provided none of them has a part anywhere else.
std::optional<std::vector<ItemId>> closed_items(const Packing& p,
                                                const std::vector<std::size_t>& bins) {
  std::set<std::size_t> inside(bins.begin(), bins.end());
  std::set<ItemId> items;
  for (std::size_t b : bins) {
    for (const Part& part : p.bin(b).parts) items.insert(part.item);
  }
  for (std::size_t b = 0; b < p.bin_count(); ++b) {
    if (inside.count(b)) continue;
    for (const Part& part : p.bin(b).parts) {
      if (items.count(part.item)) return std::nullopt;
    }
  }
  return std::vector<ItemId>(items.begin(), items.end());
}

Packing replace_bins(const Packing& p, const std::vector<std::size_t>& drop,
                     const Packing& replacement) {
  std::set<std::size_t> gone(drop.begin(), drop.end());
  Packing out;
  for (std::size_t b = 0; b < p.bin_count(); ++b) {
    if (!gone.count(b)) out.append(p.bin(b));
  }
  for (Bin bin : replacement.bins()) {
    bin.label = BinLabel::Repacked;
    out.append(std::move(bin));
  }
  return out;
}

}  // namespace

std::string_view to_string(Fallback f) {
  switch (f) {
    case Fallback::None: return "none";
    case Fallback::TwoBinRepack: return "two-bin";
    case Fallback::SevenBinSearch: return "seven-bin";
  }
  return "?";
}

nlohmann::json to_json(const A75Report& report) {
  nlohmann::json counts = nlohmann::json::object();
  for (BinLabel label : {BinLabel::S2a, BinLabel::S2b, BinLabel::S3, BinLabel::S4, BinLabel::S5,
                         BinLabel::S6, BinLabel::Repacked}) {
    counts[std::string(to_string(label))] = report.count(label);
  }
  return {
      {"bins", report.packing.bin_count()},
      {"counts", counts},
      {"reclassified_small", report.reclassified_small},
      {"fallback_triggered", std::string(to_string(report.fallback_triggered))},
      {"fallback_applied", report.fallback_applied},
  };
}

Pack75State::Pack75State(const Instance& instance) : inst(&instance) {
  if (instance.k() != 2) throw InvalidInput("the 7/5 algorithm needs k = 2");
  std::vector<ItemId> s, m, l;
  for (ItemId id = 0; id < instance.size(); ++id) {
    switch (classify(instance.item_size(id))) {
      case ItemClass::Small: s.push_back(id); break;
      case ItemClass::Medium: m.push_back(id); break;
      case ItemClass::Large: l.push_back(id); break;
    }
  }
  auto size = [&](ItemId id) -> const Rational& { return instance.item_size(id); };
  auto up = [&](ItemId a, ItemId b) { return size(a) != size(b) ? size(a) < size(b) : a < b; };
  auto down = [&](ItemId a, ItemId b) { return size(a) != size(b) ? size(b) < size(a) : a < b; };
  std::sort(s.begin(), s.end(), up);
  std::sort(m.begin(), m.end(), down);
  std::sort(l.begin(), l.end(), down);
  smalls.assign(s.begin(), s.end());
  mediums = std::move(m);
  larges = std::move(l);
}

std::pair<Rational, Rational> split_2b(const Rational& medium, const Rational& s_a,
                                       const Rational& s_b) {
  const Rational half(1, 2);
  if (!medium.is_positive() || kOne < medium) throw InvalidInput("split_2b: medium must be in (0, 1]");
  if (!s_b.is_positive() || s_a < s_b || half < s_a) {
    throw InvalidInput("split_2b: need 0 < s_b <= s_a <= 1/2");
  }
  if (medium + s_a <= kOne) throw InvalidInput("split_2b: medium fits with s_a in one bin");
  Rational part1 = kOne - s_a;
  return {part1, medium - part1};
}

bool reclassify_lone_small(Pack75State& st) {
  if (st.smalls.size() != 1) return false;
  const Rational& s = st.inst->item_size(st.smalls.front());
  for (ItemId m : st.mediums) {
    if (st.inst->item_size(m) + s <= kOne) return false;
  }
  st.nf_mediums.push_back(st.smalls.front());
  st.smalls.clear();
  st.report.reclassified_small = true;
  return true;
}

void pair_mediums(Pack75State& st) {
  const Instance& inst = *st.inst;
  Packing& out = st.report.packing;
  while (!st.mediums.empty()) {
    ItemId m = st.mediums.front();
    st.mediums.erase(st.mediums.begin());
    const Rational& ms = inst.item_size(m);
    if (st.smalls.empty()) {
      st.nf_mediums.push_back(m);
      continue;
    }
    ItemId smallest = st.smalls.front();
    if (ms + inst.item_size(smallest) <= kOne) {
      Bin& bin = out.open_bin(BinLabel::S2a);
      bin.add(m, ms);
      bin.add(smallest, inst.item_size(smallest));
      st.smalls.pop_front();
      continue;
    }
    if (st.smalls.size() >= 2) {
      ItemId a = st.smalls.back();
      ItemId b = st.smalls[st.smalls.size() - 2];
      auto [p1, p2] = split_2b(ms, inst.item_size(a), inst.item_size(b));
      Bin& first = out.open_bin(BinLabel::S2b);
      first.add(a, inst.item_size(a));
      first.add(m, p1);
      Bin& second = out.open_bin(BinLabel::S2b);
      second.add(b, inst.item_size(b));
      second.add(m, p2);
      st.report.critical.push_back({m, a, b, inst.item_size(smallest)});
      st.smalls.pop_back();
      st.smalls.pop_back();
      continue;
    }
    // A single small that this medium cannot take. A later, smaller medium
    // may still fit with it; if none does it becomes a medium itself.
    st.nf_mediums.push_back(m);
    reclassify_lone_small(st);
  }
}

void pack_step3(Pack75State& st) {
  const Instance& inst = *st.inst;
  // A reclassified small is the smallest "medium" and goes last.
  std::stable_sort(st.nf_mediums.begin(), st.nf_mediums.end(), [&](ItemId a, ItemId b) {
    return inst.item_size(b) < inst.item_size(a);
  });
  NextFitPacker nf(st.report.packing, 2, BinLabel::S3);
  for (ItemId id : st.nf_mediums) nf.place(id, st.inst->item_size(id));
  for (ItemId id : st.larges) nf.place(id, st.inst->item_size(id));
  st.nf_mediums.clear();
  st.larges.clear();
}

void large_into_smalls(Pack75State& st) {
  const Instance& inst = *st.inst;
  Packing& out = st.report.packing;
  std::vector<std::size_t> seeded;
  for (ItemId s : st.smalls) {
    Bin& bin = out.open_bin(BinLabel::S4);
    bin.add(s, inst.item_size(s));
    seeded.push_back(out.bin_count() - 1);
  }
  st.smalls.clear();

  std::size_t next = 0;
  std::size_t done = 0;
  for (; done < st.larges.size() && next < seeded.size(); ++done) {
    ItemId l = st.larges[done];
    Rational rest = inst.item_size(l);
    while (rest.is_positive() && next < seeded.size()) {
      Bin& bin = out.bins()[seeded[next++]];
      Rational piece = min(rest, kOne - bin.load());
      bin.add(l, piece);
      rest -= piece;
    }
    if (rest.is_positive()) {
      // Smalls ran out inside this large: it and every later large go on in
      // fresh bins as step-6 items.
      NextFitPacker nf(out, 2, BinLabel::S6);
      nf.place(l, rest);
      for (std::size_t j = done + 1; j < st.larges.size(); ++j) {
        nf.place(st.larges[j], inst.item_size(st.larges[j]));
      }
      st.larges.clear();
      return;
    }
  }
  // Smalls used up exactly at a large boundary: the rest is step 6.
  NextFitPacker nf(out, 2, BinLabel::S6);
  for (std::size_t j = done; j < st.larges.size(); ++j) {
    nf.place(st.larges[j], inst.item_size(st.larges[j]));
  }
  st.larges.clear();
}

void pair_leftover_smalls(Pack75State& st) {
  Packing& out = st.report.packing;
  std::vector<ItemId> lone;
  std::vector<Bin> kept;
  for (const Bin& bin : out.bins()) {
    if (bin.label == BinLabel::S4 && bin.parts.size() == 1) {
      lone.push_back(bin.parts.front().item);
    } else {
      kept.push_back(bin);
    }
  }
  if (lone.empty()) return;
  out = Packing(std::move(kept));
  for (std::size_t i = 0; i < lone.size(); i += 2) {
    Bin& bin = out.open_bin(BinLabel::S5);
    bin.add(lone[i], st.inst->item_size(lone[i]));
    if (i + 1 < lone.size()) bin.add(lone[i + 1], st.inst->item_size(lone[i + 1]));
  }
}

A75Report repair_two_bin(A75Report report, const Instance& inst) {
  const Packing& p = report.packing;
  std::size_t large_count = 0;
  for (const Rational& s : inst.sizes()) large_count += classify(s) == ItemClass::Large;
  std::vector<std::size_t> s2a = bins_labeled(p, BinLabel::S2a);
  std::vector<std::size_t> tail = trailing_group(p);
  if (large_count != 1 || s2a.size() != 1 || tail.size() != 2) return report;

  std::vector<std::size_t> pattern = {s2a[0], tail[0], tail[1]};
  auto items = closed_items(p, pattern);
  if (!items) return report;
  report.fallback_triggered = Fallback::TwoBinRepack;

  // Medium items first, then the large one, then the smalls.
  std::vector<ItemId> order = *items;
  auto rank = [&](ItemId id) {
    switch (classify(inst.item_size(id))) {
      case ItemClass::Medium: return 0;
      case ItemClass::Large: return 1;
      case ItemClass::Small: return 2;
    }
    return 3;
  };
  std::stable_sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    if (rank(a) != rank(b)) return rank(a) < rank(b);
    return inst.item_size(b) < inst.item_size(a);
  });
  Packing trial;
  NextFitPacker nf(trial, 2, BinLabel::Repacked);
  for (ItemId id : order) nf.place(id, inst.item_size(id));
  if (trial.bin_count() > 2) return report;

  report.packing = replace_bins(p, pattern, trial);
  report.fallback_applied = true;
  return report;
}

SearchOptions seven_bin_search() {
  SearchOptions o;
  o.budget.max_items = 16;
  o.budget.max_bins = 7;
  return o;
}

A75Report repair_seven_bin(A75Report report, const Instance& inst, const SearchOptions& search) {
  const Packing& p = report.packing;
  std::vector<std::size_t> s2b = bins_labeled(p, BinLabel::S2b);
  std::vector<std::size_t> s2a = bins_labeled(p, BinLabel::S2a);
  std::vector<std::size_t> tail = trailing_group(p);
  if (s2b.size() != 4 || s2a.size() != 1 || tail.size() != 5) return report;

  std::vector<std::size_t> pattern = s2b;
  pattern.push_back(s2a[0]);
  pattern.insert(pattern.end(), tail.begin(), tail.end());
  auto items = closed_items(p, pattern);
  if (!items) return report;
  report.fallback_triggered = Fallback::SevenBinSearch;

  Instance sub = inst.subset(*items);
  std::optional<Packing> found;
  try {
    found = feasible_in(sub, 7, search);
  } catch (const BudgetExceeded&) {
    return report;
  }
  if (!found) return report;

  Packing mapped;
  for (const Bin& bin : found->bins()) {
    Bin& b = mapped.open_bin(BinLabel::Repacked);
    for (const Part& part : bin.parts) b.add((*items)[part.item], part.amount);
  }
  mapped.prune_empty();
  report.packing = replace_bins(p, pattern, mapped);
  report.fallback_applied = true;
  return report;
}

A75Report pack_75(const Instance& inst, const Pack75Options& options) {
  Pack75State st(inst);
  pair_mediums(st);
  if (st.smalls.empty()) {
    pack_step3(st);
  } else {
    large_into_smalls(st);
    pair_leftover_smalls(st);
  }
  A75Report report = std::move(st.report);
  if (!options.repairs) return report;
  report = repair_two_bin(std::move(report), inst);
  if (report.fallback_triggered == Fallback::None) {
    report = repair_seven_bin(std::move(report), inst, options.search);
  }
  return report;
}

}  // namespace splitpack
