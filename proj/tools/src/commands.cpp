#include "latop/cli/commands.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace latop::cli {

namespace fs = std::filesystem;

Dataset gen_dataset(const ParamPoint& target, const GenOptions& opt) {
  if (opt.height <= 0 || opt.width <= 0) fail(ErrorKind::Input, "generated images need positive dimensions");
  if (!(opt.density >= 0.0 && opt.density <= 1.0)) fail(ErrorKind::Input, "density must lie in [0, 1]");
  if (!(opt.noise_rate >= 0.0 && opt.noise_rate <= 1.0)) fail(ErrorKind::Input, "noise rate must lie in [0, 1]");
  if (opt.count == 0) fail(ErrorKind::Input, "count must be positive");

  const Operator op = realize(target);
  Rng rng(opt.seed);
  std::vector<SamplePair> pairs;
  pairs.reserve(opt.count);
  const std::size_t n = static_cast<std::size_t>(opt.height) * static_cast<std::size_t>(opt.width);
  for (std::size_t i = 0; i < opt.count; ++i) {
    std::vector<std::uint8_t> px(n);
    for (auto& p : px) p = rng.bernoulli(opt.density) ? 1 : 0;
    BinaryImage input(opt.height, opt.width, std::move(px), Boundary::Toroidal);
    std::vector<std::uint8_t> out = op(input).pixels();
    for (auto& p : out) {
      if (rng.bernoulli(opt.noise_rate)) p ^= 1;
    }
    BinaryImage target_img(opt.height, opt.width, std::move(out), Boundary::Toroidal);
    pairs.emplace_back(std::move(input), std::move(target_img));
  }
  return Dataset(std::move(pairs));
}

Manifest write_generated(const Dataset& data, const ParamPoint& target, const GenOptions& opt, const fs::path& dir) {
  fs::create_directories(dir);
  Manifest m;
  for (std::size_t i = 0; i < data.size(); ++i) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "pair_%03zu", i);
    const fs::path in = dir / (std::string(stem) + "_input.pbm");
    const fs::path out = dir / (std::string(stem) + "_target.pbm");
    write_pbm(data[i].input, in);
    write_pbm(data[i].target, out);
    m.pairs.emplace_back(in, out);
  }
  write_manifest(m, dir / "manifest.tsv");

  std::ostringstream prov;
  prov << "# generated dataset provenance\n"
       << "seed: " << opt.seed << "\n"
       << "count: " << opt.count << "\n"
       << "height: " << opt.height << "\n"
       << "width: " << opt.width << "\n"
       << "density: " << format_double(opt.density) << "\n"
       << "noise_rate: " << format_double(opt.noise_rate) << "\n"
       << "boundary: toroidal\n"
       << "target:\n"
       << serialize(target);
  write_text_file(dir / "provenance.txt", prov.str());
  return m;
}

namespace {

SLDAConfig resolve(SLDAConfig s, std::size_t n_pairs) {
  if (s.batch_size == 0) s.batch_size = n_pairs;
  if (s.neighbors == 0) s.neighbors = std::numeric_limits<std::size_t>::max();
  return s;
}

}  // namespace

TrainOutcome cmd_train(const RunConfig& cfg, const Manifest& manifest, std::ostream& log) {
  const Dataset data = load_dataset(manifest, cfg.boundary);
  TrainOutcome outcome;
  outcome.output = cfg.output;

  std::string mode;
  std::string selection_report;
  if (cfg.lattice) {
    mode = "hierarchical";
    OuterConfig outer = cfg.outer;
    outer.inner = resolve(cfg.slda, data.size());
    outcome.selection = hierarchical_slda(*cfg.lattice, data, outer);
    outcome.result = outcome.selection->fit;
    selection_report = model_selection_report(*outcome.selection, *cfg.lattice);
  } else {
    mode = "slda";
    std::optional<ParamPoint> theta0;
    if (cfg.init) {
      theta0 = read_param_file(*cfg.init, cfg.window_cap);
      if (!(theta0->spec() == cfg.class_spec)) {
        fail(ErrorKind::Config, "init point " + cfg.init->string() + " is not in the configured class");
      }
    } else {
      Rng init_rng(derive_seed(cfg.slda.seed, "init"));
      theta0 = random_init(cfg.class_spec, init_rng);
    }
    const SLDAConfig s = resolve(cfg.slda, data.size());
    s.validate(data.size());
    outcome.result = slda(*theta0, data, s);
  }

  const TrainResult& r = *outcome.result;
  const std::string theta_text = serialize(r.best_param);
  fs::create_directories(cfg.output);
  write_text_file(cfg.output / "theta.txt", theta_text);

  std::ostringstream csv;
  write_trace_csv(csv, r.trace);
  write_text_file(cfg.output / "trace.csv", csv.str());
  std::ostringstream jsonl;
  write_trace_steps_jsonl(jsonl, r.trace);
  write_text_file(cfg.output / "trace_steps.jsonl", jsonl.str());
  if (!selection_report.empty()) write_text_file(cfg.output / "modelsel.txt", selection_report);

  std::ostringstream res;
  res << "# training result\n"
      << "mode: " << mode << "\n"
      << "[config]\n"
      << cfg.render() << "[data]\n"
      << "pairs: " << data.size() << "\n"
      << "pixels: " << data.pixel_count() << "\n"
      << "[result]\n"
      << "initial_error: " << format_double(r.trace.initial_error) << "\n"
      << "best_error: " << format_double(r.best_error) << "\n"
      << "steps: " << r.trace.steps.size() << "\n"
      << "theta_digest: " << theta_digest(theta_text) << "\n";
  if (outcome.selection) {
    res << "validation_error: " << format_double(outcome.selection->validation_error) << "\n";
  }
  res << "[best_param]\n" << theta_text;
  write_text_file(cfg.output / "result.txt", res.str());

  log << "mode: " << mode << "\n"
      << "pairs: " << data.size() << "\n"
      << "initial_error: " << format_double(r.trace.initial_error) << "\n"
      << "train_error: " << format_double(r.best_error) << "\n";
  if (outcome.selection) {
    log << "windows: " << render_node(outcome.selection->best_node, *cfg.lattice) << "\n"
        << "validation_error: " << format_double(outcome.selection->validation_error) << "\n";
  }
  log << "output: " << cfg.output.generic_string() << "\n";
  return outcome;
}

std::string basis_listing(const Basis& b, const PropertyReport& r) {
  auto flag = [](bool v) { return v ? "true" : "false"; };
  std::string out = "window: " + to_string(b.window) + "\n";
  out += "intervals: " + std::to_string(b.intervals.size()) + "\n";
  out += serialize_basis(b);
  out += std::string("is_increasing: ") + flag(r.is_increasing) + "\n";
  out += std::string("contains_full_interval_from_origin: ") + flag(r.contains_full_interval_from_origin) + "\n";
  out += std::string("origin_in_all_lower_endpoints: ") + flag(r.origin_in_all_lower_endpoints) + "\n";
  return out;
}

BasisOutcome cmd_basis(const ParamPoint& theta, std::ostream& out, std::size_t window_cap, std::size_t basis_cap) {
  BasisOutcome o{basis_of_param(theta, window_cap, basis_cap), {}};
  o.report = property_report(o.basis);
  out << basis_listing(o.basis, o.report);
  return o;
}

EvalOutcome cmd_eval(const ParamPoint& theta, const Manifest& manifest, Boundary boundary, std::ostream& out) {
  const Dataset data = load_dataset(manifest, boundary);
  EvalOutcome o{holdout_error(theta, data), intersection_over_union(theta, data), data.size()};
  out << "pairs: " << o.pairs << "\n"
      << "pixel_error: " << format_double(o.pixel_error) << "\n"
      << "iou: " << format_double(o.iou) << "\n";
  return o;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

double parse_number(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ErrorKind::Parse, "trace line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

std::size_t parse_index(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ErrorKind::Parse, "trace line " + std::to_string(line) + ": bad index '" + s + "'");
  }
  return v;
}

}  // namespace

TraceSummary inspect_trace(std::string_view csv) {
  TraceSummary t;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t no = 0;
  if (!std::getline(in, line) || line != "epoch,batch,step,batch_error,full_error_if_epoch_end,theta_digest") {
    fail(ErrorKind::Parse, "trace line 1: unexpected header");
  }
  ++no;
  bool have_initial = false;
  std::size_t last_epoch = 0;
  bool last_closed = true;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 6) fail(ErrorKind::Parse, "trace line " + std::to_string(no) + ": expected 6 fields");
    const std::size_t epoch = parse_index(f[0], no);
    const std::size_t step = parse_index(f[2], no);
    if (!have_initial) {
      if (step != 0 || f[4].empty()) fail(ErrorKind::Parse, "trace line 2: missing initial row");
      t.initial_error = parse_number(f[4], no);
      t.best_error = t.initial_error;
      have_initial = true;
      continue;
    }
    if (step != t.steps + 1) t.problems.push_back("line " + std::to_string(no) + ": step numbering skips");
    t.steps = step;
    if (epoch != last_epoch) {
      if (!last_closed) t.problems.push_back("epoch " + std::to_string(last_epoch) + " has no full error");
      if (epoch != last_epoch + 1) t.problems.push_back("line " + std::to_string(no) + ": epoch numbering skips");
      last_epoch = epoch;
      last_closed = false;
    }
    parse_number(f[3], no);
    if (!f[4].empty()) {
      if (last_closed) t.problems.push_back("epoch " + std::to_string(epoch) + " reports two full errors");
      const double e = parse_number(f[4], no);
      t.epoch_errors.push_back(e);
      if (e < t.best_error) {
        t.best_error = e;
        t.best_epoch = epoch;
      }
      last_closed = true;
    }
  }
  if (!have_initial) fail(ErrorKind::Parse, "trace has no rows");
  if (!last_closed) t.problems.push_back("epoch " + std::to_string(last_epoch) + " has no full error");
  t.epochs = t.epoch_errors.size();
  t.consistent = t.problems.empty();
  return t;
}

TraceSummary cmd_inspect_trace(const fs::path& csv, std::ostream& out) {
  const TraceSummary t = inspect_trace(read_text_file(csv));
  out << "steps: " << t.steps << "\n"
      << "epochs: " << t.epochs << "\n"
      << "initial_error: " << format_double(t.initial_error) << "\n"
      << "best_error: " << format_double(t.best_error) << "\n"
      << "best_epoch: " << t.best_epoch << "\n"
      << "epoch_errors:";
  for (double e : t.epoch_errors) out << ' ' << format_double(e);
  out << "\n";
  for (const auto& p : t.problems) out << "problem: " << p << "\n";
  out << "consistent: " << (t.consistent ? "true" : "false") << "\n";
  return t;
}

}  // namespace latop::cli
