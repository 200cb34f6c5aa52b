#include "stodom/stodom.h"

#include <cstring>
#include <string>

#include "core/errors.hpp"
#include "lift/main_coupling.hpp"
#include "run/runner.hpp"

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

stodom_status record_error(stodom_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps C++ exceptions from the core onto status codes.
template <typename Fn>
stodom_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const stodom::SizeError& e) {
    return record_error(STODOM_ESIZE, e.what());
  } catch (const stodom::AssumptionError& e) {
    return record_error(STODOM_CHECK_FAILED, e.what());
  } catch (const stodom::InputError& e) {
    return record_error(STODOM_EINPUT, e.what());
  } catch (const std::exception& e) {
    return record_error(STODOM_EINTERNAL, e.what());
  }
}

}  // namespace

struct stodom_measure {
  stodom::FiniteMeasure value;
};
struct stodom_fibre_map {
  stodom::FibreMap value;
};
struct stodom_coupling {
  stodom::Coupling value;
};

extern "C" {

const char* stodom_version(void) { return "stodom 1.0.0"; }

const char* stodom_last_error(void) { return g_last_error.c_str(); }

void stodom_string_free(char* s) { delete[] s; }

stodom_status stodom_measure_parse(const char* json, stodom_measure** out) {
  if (!json || !out) return record_error(STODOM_EINPUT, "null argument");
  return guarded([&] {
    *out = new stodom_measure{stodom::FiniteMeasure::from_json(json)};
    return STODOM_OK;
  });
}

stodom_status stodom_measure_render(const stodom_measure* m, char** json_out) {
  if (!m || !json_out) return record_error(STODOM_EINPUT, "null argument");
  return guarded([&] {
    *json_out = copy_string(m->value.to_json());
    return STODOM_OK;
  });
}

void stodom_measure_free(stodom_measure* m) { delete m; }

stodom_status stodom_fibre_map_parse(const char* json, stodom_fibre_map** out) {
  if (!json || !out) return record_error(STODOM_EINPUT, "null argument");
  return guarded([&] {
    *out = new stodom_fibre_map{stodom::FibreMap::from_json(json)};
    return STODOM_OK;
  });
}

void stodom_fibre_map_free(stodom_fibre_map* pm) { delete pm; }

stodom_status stodom_coupling_render(const stodom_coupling* c, char** json_out) {
  if (!c || !json_out) return record_error(STODOM_EINPUT, "null argument");
  return guarded([&] {
    *json_out = copy_string(c->value.to_json());
    return STODOM_OK;
  });
}

void stodom_coupling_free(stodom_coupling* c) { delete c; }

stodom_status stodom_dominates(const stodom_measure* mu, const stodom_measure* rho,
                               int* verdict_out, char** certificate_json) {
  if (!mu || !rho || !verdict_out) return record_error(STODOM_EINPUT, "null argument");
  return guarded([&] {
    stodom::DominatesResult r = stodom::dominates(mu->value, rho->value);
    *verdict_out = r.yes ? 1 : 0;
    if (certificate_json) {
      std::string cert;
      if (r.yes) {
        cert = std::string("{\"dominated\":true,\"coupling\":") + r.witness->to_json() + "}";
      } else {
        cert = "{\"dominated\":false,\"violator_generators\":[";
        for (size_t i = 0; i < r.violator->generators.size(); ++i) {
          if (i) cert += ',';
          cert += '"' + stodom::config_key(r.violator->generators[i]) + '"';
        }
        cert += "],\"mu_mass\":\"" + stodom::rational_str(r.violator_mu_mass) +
                "\",\"rho_mass\":\"" + stodom::rational_str(r.violator_rho_mass) + "\"}";
      }
      *certificate_json = copy_string(cert);
    }
    return STODOM_OK;
  });
}

stodom_status stodom_build_main_coupling(const stodom_measure* mu, const stodom_measure* rho,
                                         const stodom_fibre_map* pm, stodom_coupling** out) {
  if (!mu || !rho || !pm || !out) return record_error(STODOM_EINPUT, "null argument");
  return guarded([&] {
    *out = new stodom_coupling{stodom::build_main_coupling(mu->value, rho->value, pm->value)};
    return STODOM_OK;
  });
}

stodom_status stodom_check_assumption(char which, const stodom_measure* mu,
                                      const stodom_measure* rho, const stodom_fibre_map* pm,
                                      char** report_json) {
  if (!rho || !pm || !report_json) return record_error(STODOM_EINPUT, "null argument");
  return guarded([&] {
    stodom::AssumptionReport report;
    if (which == 'A') {
      report = stodom::check_assumption_A(rho->value, pm->value);
    } else if (which == 'B') {
      if (!mu) return record_error(STODOM_EINPUT, "assumption B needs mu");
      report = stodom::check_assumption_B(mu->value, rho->value, pm->value);
    } else if (which == 'C') {
      if (!mu) return record_error(STODOM_EINPUT, "assumption C needs mu");
      report = stodom::check_assumption_C(mu->value, rho->value, pm->value);
    } else {
      return record_error(STODOM_EINPUT, "assumption selector must be A, B or C");
    }
    std::string witness = report.witness;
    std::string escaped;
    for (char c : witness) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    *report_json = copy_string(std::string("{\"holds\":") + (report.holds ? "true" : "false") +
                               ",\"witness\":\"" + escaped + "\"}");
    return STODOM_OK;
  });
}

stodom_status stodom_run(const char* config_json, char** report_json) {
  if (!config_json) return record_error(STODOM_EINPUT, "null config");
  g_last_error.clear();
  stodom::run::RunOutcome outcome = stodom::run::run_experiment(config_json);
  if (!outcome.report_json.empty() && report_json)
    *report_json = copy_string(outcome.report_json);
  if (!outcome.error.empty()) g_last_error = outcome.error;
  switch (outcome.status) {
    case stodom::run::RunStatus::ok:
      return STODOM_OK;
    case stodom::run::RunStatus::check_failed:
      return STODOM_CHECK_FAILED;
    case stodom::run::RunStatus::input_error:
      return STODOM_EINPUT;
    case stodom::run::RunStatus::size_error:
      return STODOM_ESIZE;
    default:
      return STODOM_EINTERNAL;
  }
}

}  // extern "C"
