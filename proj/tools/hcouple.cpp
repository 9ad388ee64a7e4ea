// hcouple: command-line front end for exact computations in asymptotic
// couples: validation, extensions, the lazy closure engine, concrete
// log/exp models, the simple-extension classifier, the monotone solver,
// formula evaluation and the property fuzzer.

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>

#include "hcouple/analysis.hpp"
#include "hcouple/fuzz.hpp"
#include "hcouple/lang.hpp"
#include "hcouple/serialize.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kFormatVersion = 1;

using namespace hcouple;

std::uint64_t digest(const std::vector<std::string>& inputs) {
  // FNV-1a, enough to tie a report to its inputs
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& s : inputs)
    for (const char c : s)
      h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return h;
}

struct Output {
  bool json = false;
  Json report;

  Output() {
    report["tool"] = "hcouple";
    report["version"] = kVersion;
    report["formatVersion"] = kFormatVersion;
  }

  void meta(const std::string& command, const std::vector<std::string>& inputs) {
    report["command"] = command;
    report["inputsDigest"] = digest(inputs);
  }

  void emit(const std::string& humanText) {
    if (json)
      std::cout << report.dump(2) << "\n";
    else
      std::cout << humanText;
  }
};

Json vecJson(const Presentation& p, const VecElement& v) { return vecToJson(v, p.ctx()); }

Json extensionJson(const ExtensionResult& ext) {
  Json j;
  j["presentation"] = presentationToJson(ext.extended);
  j["newBasisId"] = ext.newBasisId;
  Json emb = Json::object();
  for (const auto& [from, to] : ext.embedding)
    emb[from] = to;
  j["embedding"] = emb;
  j["adjoined"] = vecJson(ext.extended, ext.adjoinedElement);
  Json psis = Json::array();
  for (const auto& v : ext.predictedPsi)
    psis.push_back(vecJson(ext.extended, v));
  j["predictedPsi"] = psis;
  j["note"] = ext.note;
  return j;
}

std::size_t scaledCases(std::size_t n, double scale) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(n) * scale));
}

int runFuzz(std::uint64_t seed, const std::string& suite, double scale, unsigned jobs,
            Output& out) {
  using fuzz::SuiteResult;
  std::vector<SuiteResult> results;
  if (suite == "all" && jobs > 1) {
    // suites are independent of each other; fan them out
    std::vector<std::future<SuiteResult>> futs;
    futs.push_back(std::async(std::launch::async,
                              [=] { return fuzz::axiomSuite(seed + 1, scaledCases(10000, scale)); }));
    futs.push_back(std::async(std::launch::async,
                              [=] { return fuzz::extensionSuite(seed + 2, scaledCases(1000, scale)); }));
    futs.push_back(std::async(std::launch::async,
                              [=] { return fuzz::closureSuite(seed + 3, scaledCases(1000, scale)); }));
    futs.push_back(std::async(std::launch::async,
                              [=] { return fuzz::logModelSuite(seed + 4, scaledCases(10000, scale)); }));
    futs.push_back(std::async(std::launch::async, [=] {
      return fuzz::transExampleSuite(seed + 5, scaledCases(10000, scale));
    }));
    futs.push_back(std::async(std::launch::async, [=] { return fuzz::classifierSuite(seed + 6); }));
    futs.push_back(std::async(std::launch::async, [=] {
      return fuzz::solverSuite(seed + 7, scaledCases(10000, scale), scaledCases(1000, scale));
    }));
    futs.push_back(std::async(std::launch::async, [=] { return fuzz::langSuite(seed + 8); }));
    futs.push_back(std::async(std::launch::async, [=] {
      return fuzz::scalarExtensionSuite(seed + 9, scaledCases(1000, scale));
    }));
    for (auto& f : futs)
      results.push_back(f.get());
  } else if (suite == "all") {
    results = fuzz::runAllSuites(seed, scale);
  } else if (suite == "axioms") {
    results.push_back(fuzz::axiomSuite(seed, scaledCases(10000, scale)));
  } else if (suite == "extensions") {
    results.push_back(fuzz::extensionSuite(seed, scaledCases(1000, scale)));
  } else if (suite == "closure") {
    results.push_back(fuzz::closureSuite(seed, scaledCases(1000, scale)));
  } else if (suite == "logmodel") {
    results.push_back(fuzz::logModelSuite(seed, scaledCases(10000, scale)));
  } else if (suite == "transmodel") {
    results.push_back(fuzz::transExampleSuite(seed, scaledCases(10000, scale)));
  } else if (suite == "classifier") {
    results.push_back(fuzz::classifierSuite(seed));
  } else if (suite == "solver") {
    results.push_back(fuzz::solverSuite(seed, scaledCases(10000, scale), scaledCases(1000, scale)));
  } else if (suite == "lang") {
    results.push_back(fuzz::langSuite(seed));
  } else if (suite == "scalarext") {
    results.push_back(fuzz::scalarExtensionSuite(seed, scaledCases(1000, scale)));
  } else {
    throw FormatError("unknown suite '" + suite + "'");
  }

  bool allPassed = true;
  std::string text;
  Json rj = Json::array();
  for (const auto& r : results) {
    allPassed = allPassed && r.passed;
    text += r.name + ": " + (r.passed ? "pass" : "FAIL") + " (" + std::to_string(r.cases) +
            " cases)\n";
    for (const auto& f : r.failures)
      text += "  - " + f + "\n";
    Json one{{"suite", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"seconds", r.seconds}};
    one["failures"] = r.failures;
    rj.push_back(one);
  }
  out.report["suites"] = rj;
  out.report["passed"] = allPassed;
  out.emit(text);
  return allPassed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in asymptotic couples over ordered scalar fields"};
  app.set_version_flag("--version",
                       std::string(kVersion) + " (format " + std::to_string(kFormatVersion) + ")");
  app.require_subcommand(1);
  app.fallthrough(); // --json may follow the subcommand

  Output out;
  app.add_flag("--json", out.json, "machine-readable JSON output");

  // --- validate ---
  std::string valFile;
  auto* cmdValidate = app.add_subcommand("validate", "check the axioms of a presentation file");
  cmdValidate->add_option("file", valFile, "presentation JSON file")->required();

  // --- extend ---
  std::string extFile, extOp = "grounded", extBeta, extField = "Q(sqrt2)", extOut, extSign = "neg";
  std::size_t extPos = 0;
  auto* cmdExtend = app.add_subcommand("extend", "apply an extension constructor");
  cmdExtend->add_option("file", extFile)->required();
  cmdExtend->add_option("--op", extOp, "grounded | insert | adjoin | remove-gap | scalar");
  cmdExtend->add_option("--beta", extBeta, "psi-value for insert/adjoin (e.g. '1 + 1/2*b2')");
  cmdExtend->add_option("--position", extPos, "class slot for insert (0 = above all)");
  cmdExtend->add_option("--sign", extSign, "pos | neg (remove-gap)");
  cmdExtend->add_option("--field", extField, "target field for scalar (e.g. 'Q(sqrt2)')");
  cmdExtend->add_option("-o,--out", extOut, "write the extended presentation here");

  // --- closure ---
  auto* cmdClosure = app.add_subcommand("closure", "lazy H-closure engine");
  cmdClosure->require_subcommand(1);
  std::string cloSeedFile, cloValue, cloHistoryOut, cloHistoryIn;
  auto* cloIntegrate = cmdClosure->add_subcommand("integrate", "alpha with alpha' = gamma");
  cloIntegrate->add_option("--seed-file", cloSeedFile)->required();
  cloIntegrate->add_option("--gamma", cloValue)->required();
  cloIntegrate->add_option("--save-history", cloHistoryOut);
  auto* cloPreimage =
      cmdClosure->add_subcommand("psi-preimage", "alpha > 0 with psi(alpha) = beta");
  cloPreimage->add_option("--seed-file", cloSeedFile)->required();
  cloPreimage->add_option("--beta", cloValue)->required();
  cloPreimage->add_option("--save-history", cloHistoryOut);
  auto* cloReplay = cmdClosure->add_subcommand("replay", "re-run a saved history");
  cloReplay->add_option("--history", cloHistoryIn)->required();

  // --- model ---
  auto* cmdModel = app.add_subcommand("model", "concrete couple models");
  cmdModel->require_subcommand(1);
  std::string mName = "trans", mValue, mA, mB;
  std::vector<std::string> mValues;
  auto* mPsi = cmdModel->add_subcommand("psi", "psi of a model element");
  mPsi->add_option("--model", mName, "p1 | p2 | logm | gap | trans | <file>");
  mPsi->add_option("value", mValue)->required();
  auto* mIntegrate = cmdModel->add_subcommand("integrate", "asymptotic integral");
  mIntegrate->add_option("--model", mName);
  mIntegrate->add_option("value", mValue)->required();
  auto* mClassCmp = cmdModel->add_subcommand("class-cmp", "compare archimedean classes");
  mClassCmp->add_option("--model", mName);
  mClassCmp->add_option("a", mA)->required();
  mClassCmp->add_option("b", mB)->required();
  auto* mRank = cmdModel->add_subcommand("rank", "exact linear rank of values");
  mRank->add_option("--model", mName);
  mRank->add_option("values", mValues)->required()->expected(-1);

  // --- classify ---
  auto* cmdClassify = app.add_subcommand("classify", "simple-extension case analysis");
  std::string clModel = "trans", clBeta;
  std::vector<std::string> clGens;
  bool clWholeBase = false;
  unsigned clMaxSteps = 32;
  bool clCheck = false;
  std::uint64_t clSeed = 1;
  cmdClassify->add_option("--model", clModel);
  cmdClassify->add_option("--beta", clBeta)->required();
  cmdClassify->add_option("--gens", clGens, "generators of Gamma");
  cmdClassify->add_flag("--whole-base", clWholeBase, "Gamma = the model's dense base");
  cmdClassify->add_option("--max-steps", clMaxSteps);
  cmdClassify->add_flag("--check", clCheck, "also run the verdict's invariant checks");
  cmdClassify->add_option("--seed", clSeed, "seed for the sampled checks");

  // --- solve ---
  auto* cmdSolve = app.add_subcommand("solve", "strictly monotone psi-iterate equation");
  std::string soModel = "logm", soTarget;
  std::vector<std::string> soShifts, soCoeffs;
  cmdSolve->add_option("--model", soModel);
  cmdSolve->add_option("--target", soTarget)->required();
  cmdSolve->add_option("--shifts", soShifts, "alpha_1 .. alpha_n")->required();
  cmdSolve->add_option("--coeffs", soCoeffs, "c_1 .. c_n (default: all 1)");

  // --- eval ---
  auto* cmdEval = app.add_subcommand("eval", "decide closed quantifier-free formulas");
  std::string evModel = "p1", evFormula, evFile;
  cmdEval->add_option("--model", evModel);
  cmdEval->add_option("--formula", evFormula);
  cmdEval->add_option("--file", evFile, "formula file: one per line, '#' comments");

  // --- exists ---
  auto* cmdExists = app.add_subcommand("exists", "bounded existential witness search");
  std::string exModel = "engine:p1", exFormula;
  std::size_t exBudget = 64;
  cmdExists->add_option("--model", exModel);
  cmdExists->add_option("--formula", exFormula)->required();
  cmdExists->add_option("--budget", exBudget);

  // --- fuzz ---
  auto* cmdFuzz = app.add_subcommand("fuzz", "run the property suites");
  std::uint64_t fuzzSeed = 0;
  std::string fuzzSuite = "all";
  double fuzzScale = 1.0;
  unsigned fuzzJobs = 1;
  cmdFuzz->add_option("--seed", fuzzSeed, "RNG seed (required for reproducibility)")->required();
  cmdFuzz->add_option("--suite", fuzzSuite,
                      "axioms | extensions | closure | logmodel | transmodel | classifier | "
                      "solver | lang | scalarext | all");
  cmdFuzz->add_option("--scale", fuzzScale, "case-count multiplier");
  cmdFuzz->add_option("--jobs", fuzzJobs, "parallel suites (with --suite all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmdValidate) {
      out.meta("validate", {valFile});
      const Presentation p = loadPresentationFile(valFile);
      const ValidationReport rep = p.validateAxioms();
      out.report["ok"] = rep.ok;
      out.report["violations"] = rep.violations;
      std::string text = rep.ok ? "ok\n" : "invalid:\n";
      for (const auto& v : rep.violations)
        text += "  - " + v + "\n";
      out.emit(text);
      return rep.ok ? 0 : 1;
    }

    if (*cmdExtend) {
      out.meta("extend", {extFile, extOp, extBeta, extSign, extField});
      const Presentation p = loadPresentationFile(extFile);
      PresentationModel scratch(p);
      ExtensionResult ext;
      if (extOp == "grounded") {
        ext = extendGrounded(p);
      } else if (extOp == "insert") {
        ext = insertClass(p, extPos, std::get<VecElement>(scratch.parseValue(extBeta)));
      } else if (extOp == "adjoin") {
        ext = adjoinPsiValue(p, std::get<VecElement>(scratch.parseValue(extBeta)));
      } else if (extOp == "remove-gap") {
        ext = removeGap(p, extSign == "pos" ? GapRemovalSign::Positive : GapRemovalSign::Negative);
      } else if (extOp == "scalar") {
        const Presentation probe = presentationFromJson(
            Json{{"scalars", extField}, {"basis", Json::array()}, {"unit", Json::array()}});
        ext = scalarExtend(p, probe.scalarRadicand());
      } else {
        throw FormatError("unknown extension op '" + extOp + "'");
      }
      out.report["extension"] = extensionJson(ext);
      if (!extOut.empty())
        savePresentationFile(ext.extended, extOut);
      out.emit(ext.note + "\nnew presentation:\n" + presentationToString(ext.extended));
      return 0;
    }

    if (*cmdClosure) {
      if (*cloReplay) {
        out.meta("closure replay", {cloHistoryIn});
        std::ifstream in(cloHistoryIn);
        if (!in)
          throw FormatError("cannot open '" + cloHistoryIn + "'");
        Json log;
        in >> log;
        ClosureEngine engine = ClosureEngine::replay(presentationFromJson(log.at("seed")), log);
        out.report["stage"] = presentationToJson(engine.stage());
        out.report["steps"] = engine.history().size();
        out.emit("replayed " + std::to_string(engine.history().size()) + " steps\n" +
                 presentationToString(engine.stage()));
        return 0;
      }
      const bool isIntegrate = cloIntegrate->parsed();
      out.meta(isIntegrate ? "closure integrate" : "closure psi-preimage", {cloSeedFile, cloValue});
      ClosureEngine engine(loadPresentationFile(cloSeedFile));
      PresentationModel reader(engine.stage());
      const VecElement input = std::get<VecElement>(reader.parseValue(cloValue));
      const VecElement answer = isIntegrate ? engine.integrate(input) : engine.psiPreimage(input);
      out.report["answer"] = vecToJson(answer, engine.stage().ctx());
      out.report["history"] = engine.historyToJson();
      std::string text = answer.str() + "\n";
      if (!engine.history().empty() && !engine.history().back().adjoinedBasisId.empty())
        text += "stage extended by class [" + engine.history().back().adjoinedBasisId + "]\n" +
                presentationToString(engine.stage());
      if (!cloHistoryOut.empty()) {
        std::ofstream h(cloHistoryOut);
        h << engine.historyToJson().dump(2) << "\n";
      }
      out.emit(text);
      return 0;
    }

    if (*cmdModel) {
      const auto model = makeModel(mName);
      if (*mPsi) {
        out.meta("model psi", {mName, mValue});
        const auto p = model->psi(model->parseValue(mValue));
        out.report["value"] = p ? model->print(*p) : "inf";
        out.emit((p ? model->print(*p) : "inf") + "\n");
        return 0;
      }
      if (*mIntegrate) {
        out.meta("model integrate", {mName, mValue});
        const auto a = model->integrate(model->parseValue(mValue));
        if (!a)
          throw IntegrationGap("model '" + mName + "' does not integrate");
        out.report["value"] = model->print(*a);
        out.emit(model->print(*a) + "\n");
        return 0;
      }
      if (*mClassCmp) {
        out.meta("model class-cmp", {mName, mA, mB});
        const int c = model->classCompare(model->parseValue(mA), model->parseValue(mB));
        const std::string text = c < 0 ? "LT" : c > 0 ? "GT" : "EQ";
        out.report["ordering"] = text;
        out.emit(text + "\n");
        return 0;
      }
      if (*mRank) {
        out.meta("model rank", mValues);
        std::vector<MValue> vals;
        vals.reserve(mValues.size());
        for (const auto& s : mValues)
          vals.push_back(model->parseValue(s));
        const std::size_t r = spanRank(*model, vals);
        out.report["rank"] = r;
        out.emit(std::to_string(r) + "\n");
        return 0;
      }
    }

    if (*cmdClassify) {
      out.meta("classify", {clModel, clBeta});
      const auto model = makeModel(clModel);
      GeneratingSet gens;
      if (clWholeBase) {
        gens = GeneratingSet::base();
      } else {
        if (clGens.empty())
          clGens.push_back("1");
        std::vector<MValue> gs;
        gs.reserve(clGens.size());
        for (const auto& g : clGens)
          gs.push_back(model->parseValue(g));
        gens = GeneratingSet::of(std::move(gs));
      }
      const MValue beta = model->parseValue(clBeta);
      const ClassifierReport rep = classifySimpleExtension(*model, gens, beta, clMaxSteps);
      Json j;
      j["verdict"] = caseVerdictStr(rep.verdict, rep.n);
      Json alphas = Json::array(), betas = Json::array(), daggers = Json::array();
      for (const auto& a : rep.alphas)
        alphas.push_back(model->print(a));
      for (const auto& b : rep.betas)
        betas.push_back(model->print(b));
      for (const auto& d : rep.betaDaggers)
        daggers.push_back(model->print(d));
      j["alphas"] = alphas;
      j["betas"] = betas;
      j["betaDaggers"] = daggers;
      j["note"] = rep.note;
      std::string text = caseVerdictStr(rep.verdict, rep.n) + "\n";
      for (std::size_t i = 0; i < rep.betas.size(); ++i)
        text += "  beta_" + std::to_string(i) + " = " + model->print(rep.betas[i]) +
                ", dagger = " + model->print(rep.betaDaggers[i]) + "\n";
      if (clCheck) {
        Rng rng(clSeed);
        const CheckReport chk = caseInvariants(*model, gens, rep, rng);
        j["checksPassed"] = chk.ok;
        j["checkFailures"] = chk.failures;
        text += chk.ok ? "all invariant checks passed\n" : "invariant checks FAILED\n";
        for (const auto& f : chk.failures)
          text += "  - " + f + "\n";
      }
      out.report["classification"] = j;
      out.emit(text);
      return 0;
    }

    if (*cmdSolve) {
      out.meta("solve", {soModel, soTarget});
      const auto model = makeModel(soModel);
      PsiIterSpec spec;
      for (const auto& s : soShifts)
        spec.shifts.push_back(model->parseValue(s));
      for (const auto& c : soCoeffs)
        spec.coeffs.push_back(ScalarValue::parse(c));
      while (spec.coeffs.size() < spec.shifts.size())
        spec.coeffs.push_back(ScalarValue(1));
      const MValue gamma = solveMonotone(*model, spec, model->parseValue(soTarget));
      out.report["solution"] = model->print(gamma);
      out.emit(model->print(gamma) + "\n");
      return 0;
    }

    if (*cmdEval) {
      out.meta("eval", {evModel, evFormula, evFile});
      const auto model = makeModel(evModel);
      std::vector<std::string> formulas;
      if (!evFormula.empty())
        formulas.push_back(evFormula);
      if (!evFile.empty()) {
        std::ifstream in(evFile);
        if (!in)
          throw FormatError("cannot open '" + evFile + "'");
        std::string line;
        while (std::getline(in, line)) {
          const auto hash = line.find('#');
          if (hash != std::string::npos)
            line = line.substr(0, hash);
          while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
          if (!line.empty())
            formulas.push_back(line);
        }
      }
      if (formulas.empty())
        throw FormatError("nothing to evaluate: pass --formula or --file");
      Json results = Json::array();
      std::string text;
      for (const auto& f : formulas) {
        const bool value = lang::decideQF(*model, lang::parseFormula(f));
        results.push_back(Json{{"formula", f}, {"value", value}, {"model", model->name()}});
        text += f + "  =>  " + (value ? "true" : "false") + "\n";
      }
      out.report["results"] = results;
      out.emit(text);
      return 0;
    }

    if (*cmdExists) {
      out.meta("exists", {exModel, exFormula});
      const auto model = makeModel(exModel);
      const lang::ExistsResult r =
          lang::boundedExists(*model, lang::parseFormula(exFormula), exBudget);
      Json j;
      j["formula"] = exFormula;
      j["model"] = model->name();
      j["tried"] = r.tried;
      if (r.found) {
        j["witness"] = model->print(*r.witness);
        out.report["exists"] = j;
        out.emit("witness: " + model->print(*r.witness) + "\n");
      } else {
        j["witness"] = nullptr;
        out.report["exists"] = j;
        out.emit("unknown within budget (" + std::to_string(r.tried) + " candidates tried)\n");
      }
      return 0;
    }

    if (*cmdFuzz) {
      out.meta("fuzz", {std::to_string(fuzzSeed), fuzzSuite});
      return runFuzz(fuzzSeed, fuzzSuite, fuzzScale, fuzzJobs, out);
    }
  } catch (const Error& e) {
    if (out.json) {
      out.report["error"] = Json{{"code", e.code()}, {"message", e.what()}};
      std::cout << out.report.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
