#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace dricci {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_obj(std::ostream& out, const RevolutionSurface& surface, const NormalProfile& normals) {
  surface.validate();
  normals.validate();
  const ProfileCurve& prof = surface.profile;
  const int N = prof.layers();
  const int l = surface.l;
  if (static_cast<int>(normals.a.size()) != N)
    fail(ErrorCode::ShapeMismatch, "normal profile does not match the profile curve");

  double fmax = 0;
  for (double v : prof.f) fmax = std::max(fmax, v);
  const double tol = 1e-12 * fmax;
  std::vector<bool> weld(N);
  for (int n = 0; n < N; ++n) weld[n] = prof.f[n] <= tol;

  out << "# discrete surface of revolution: " << N << " layers, l=" << l << "\n";

  // Ring vertices in m-major order, then one shared vertex per welded layer.
  std::vector<std::vector<int>> vid(l, std::vector<int>(N, 0));
  int next = 1;
  for (int m = 0; m < l; ++m) {
    const double ang = 2 * M_PI * m / l;
    for (int n = 0; n < N; ++n) {
      if (weld[n]) continue;
      vid[m][n] = next++;
      out << "v " << format_g17(prof.f[n] * std::cos(ang)) << ' '
          << format_g17(prof.f[n] * std::sin(ang)) << ' ' << format_g17(prof.h[n]) << "\n";
    }
  }
  std::vector<int> tip_id(N, 0);
  for (int n = 0; n < N; ++n) {
    if (!weld[n]) continue;
    tip_id[n] = next++;
    out << "v 0 0 " << format_g17(prof.h[n]) << "\n";
  }

  // Normals stay per (m, n): tip normals depend on m.
  auto nid = [N](int m, int n) { return m * N + n + 1; };
  for (int m = 0; m < l; ++m) {
    const double ang = 2 * M_PI * m / l;
    for (int n = 0; n < N; ++n)
      out << "vn " << format_g17(normals.a[n] * std::cos(ang)) << ' '
          << format_g17(normals.a[n] * std::sin(ang)) << ' ' << format_g17(normals.b[n]) << "\n";
  }

  auto vert = [&](int m, int n) { return weld[n] ? tip_id[n] : vid[m][n]; };
  for (int n = 0; n + 1 < N; ++n) {
    if (weld[n] && weld[n + 1])
      fail(ErrorCode::InvalidArgument, "band between two axis layers");
    for (int m = 0; m < l; ++m) {
      const int m2 = (m + 1) % l;
      if (weld[n + 1]) {
        out << "f " << vert(m, n) << "//" << nid(m, n) << ' ' << vert(m2, n) << "//" << nid(m2, n)
            << ' ' << vert(m, n + 1) << "//" << nid(m, n + 1) << "\n";
      } else if (weld[n]) {
        out << "f " << vert(m, n) << "//" << nid(m, n) << ' ' << vert(m2, n + 1) << "//"
            << nid(m2, n + 1) << ' ' << vert(m, n + 1) << "//" << nid(m, n + 1) << "\n";
      } else {
        out << "f " << vert(m, n) << "//" << nid(m, n) << ' ' << vert(m2, n) << "//" << nid(m2, n)
            << ' ' << vert(m2, n + 1) << "//" << nid(m2, n + 1) << ' ' << vert(m, n + 1) << "//"
            << nid(m, n + 1) << "\n";
      }
    }
  }
}

std::string profile_to_json(const ProfileRecord& rec) {
  rec.profile.validate();
  rec.normal.validate();
  if (rec.profile.layers() != static_cast<int>(rec.normal.a.size()))
    fail(ErrorCode::ShapeMismatch, "normal profile does not match the profile curve");
  auto arr = [](const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += format_g17(v[i]);
    }
    return s + "]";
  };
  std::ostringstream os;
  os << "{\n"
     << "  \"version\": 1,\n"
     << "  \"k\": " << rec.profile.layers() - 1 << ",\n"
     << "  \"l\": " << rec.l << ",\n"
     << "  \"f\": " << arr(rec.profile.f) << ",\n"
     << "  \"h\": " << arr(rec.profile.h) << ",\n"
     << "  \"a\": " << arr(rec.normal.a) << ",\n"
     << "  \"b\": " << arr(rec.normal.b) << "\n"
     << "}\n";
  return os.str();
}

ProfileRecord profile_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer())
    fail(ErrorCode::ParseError, "profile JSON needs an integer \"version\" field");
  if (j["version"].get<int>() != 1)
    fail(ErrorCode::ParseError, "unsupported profile schema version");
  for (const char* key : {"k", "l", "f", "h", "a", "b"})
    if (!j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  ProfileRecord rec;
  int k;
  try {
    k = j["k"].get<int>();
    rec.l = j["l"].get<int>();
    rec.profile.f = j["f"].get<std::vector<double>>();
    rec.profile.h = j["h"].get<std::vector<double>>();
    rec.normal.a = j["a"].get<std::vector<double>>();
    rec.normal.b = j["b"].get<std::vector<double>>();
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed profile field: ") + e.what());
  }
  for (const auto* v : {&rec.profile.f, &rec.profile.h, &rec.normal.a, &rec.normal.b})
    if (static_cast<int>(v->size()) != k + 1)
      fail(ErrorCode::ParseError, "profile arrays must have k+1 entries");
  rec.profile.validate();
  rec.normal.validate();
  return rec;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void save_profile(const std::string& path, const ProfileRecord& rec) {
  write_text_file(path, profile_to_json(rec));
}

ProfileRecord load_profile(const std::string& path) { return profile_from_json(read_text_file(path)); }

void save_obj(const std::string& path, const RevolutionSurface& surface, const NormalProfile& normals) {
  std::ostringstream os;
  write_obj(os, surface, normals);
  write_text_file(path, os.str());
}

void write_profile_csv(std::ostream& out, const FamilySurface& fs) {
  out << "n,u_n,f,h,a,b\n";
  const int N = fs.profile.layers();
  for (int i = 0; i < N; ++i)
    out << fs.grid.n_min + i << ',' << format_g17(fs.grid.u[i]) << ',' << format_g17(fs.profile.f[i])
        << ',' << format_g17(fs.profile.h[i]) << ',' << format_g17(fs.normal.a[i]) << ','
        << format_g17(fs.normal.b[i]) << "\n";
}

void write_trace_csv(std::ostream& out, const FlowTrace& trace) {
  out << "t,n,f,h,a,b,K,H,A,r\n";
  for (size_t i = 0; i < trace.states.size(); ++i) {
    const FlowState& st = trace.states[i];
    const ProfileCurve prof = st.profile();
    const NormalProfile np = st.normals();
    const FaceData d = face_data(st);
    const int k = st.bands();
    for (int n = 0; n <= k; ++n) {
      out << format_g17(trace.times[i]) << ',' << n << ',' << format_g17(st.f[n]) << ','
          << format_g17(prof.h[n]) << ',' << format_g17(np.a[n]) << ',' << format_g17(np.b[n]) << ',';
      if (n < k)
        out << format_g17(d.K[n]) << ',' << format_g17(d.H[n]) << ',' << format_g17(d.A[n]);
      else
        out << ",,";
      out << ',' << format_g17(d.r) << "\n";
    }
  }
}

namespace {

std::string double_array_json(const std::vector<double>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_g17(v[i]);
  }
  return s + "]";
}

}  // namespace

std::string fit_to_json(const CgcFit& fit) {
  std::ostringstream os;
  os << "{\n"
     << "  \"c\": " << format_g17(fit.c) << ",\n"
     << "  \"p\": " << format_g17(fit.p) << ",\n"
     << "  \"u\": " << double_array_json(fit.u) << ",\n"
     << "  \"h_err\": " << format_g17(fit.h_err) << "\n"
     << "}\n";
  return os.str();
}

std::string fit_to_json(const NegativeFit& fit) {
  const char* key = fit.kind == FamilyKind::SinhNegative ? "q" : "p";
  std::ostringstream os;
  os << "{\n"
     << "  \"c\": " << format_g17(fit.c) << ",\n"
     << "  \"" << key << "\": " << format_g17(fit.param) << ",\n"
     << "  \"u\": " << double_array_json(fit.u) << ",\n"
     << "  \"h_err\": " << format_g17(fit.h_err) << "\n"
     << "}\n";
  return os.str();
}

std::string fit_report_json(const FlowState& state) {
  if (r_of_t(state) >= 0) return fit_to_json(fit_cgc(state));
  return fit_to_json(negative_fit(state));
}

}  // namespace dricci
