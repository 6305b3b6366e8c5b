#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zsc/common/error.hpp"
#include "zsc/common/text.hpp"
#include "zsc/mesh_core/mesh.hpp"

namespace zsc {
namespace {

struct RawMesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<long>> polygons;  // 0-based, unvalidated
};

long parse_obj_index(const std::string& token, std::size_t vertexCount, std::size_t line) {
  const std::string head = token.substr(0, token.find('/'));
  long idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stol(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    fail(ErrorKind::Input, "OBJ line " + std::to_string(line) + ": bad face index '" + token + "'");
  }
  if (idx == 0) fail(ErrorKind::Input, "OBJ line " + std::to_string(line) + ": face index 0");
  return idx > 0 ? idx - 1 : static_cast<long>(vertexCount) + idx;
}

RawMesh read_obj(std::istream& in) {
  RawMesh raw;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z))
        fail(ErrorKind::Input, "OBJ line " + std::to_string(lineNo) + ": bad vertex record");
      raw.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<long> poly;
      for (std::string tok; ls >> tok;)
        poly.push_back(parse_obj_index(tok, raw.vertices.size(), lineNo));
      if (poly.size() < 3)
        fail(ErrorKind::Input, "OBJ line " + std::to_string(lineNo) +
                                   ": polygon with fewer than 3 corners cannot be triangulated");
      raw.polygons.push_back(std::move(poly));
    }
  }
  return raw;
}

enum class PlyType { I8, U8, I16, U16, I32, U32, F32, F64 };

PlyType ply_type(const std::string& name) {
  if (name == "char" || name == "int8") return PlyType::I8;
  if (name == "uchar" || name == "uint8") return PlyType::U8;
  if (name == "short" || name == "int16") return PlyType::I16;
  if (name == "ushort" || name == "uint16") return PlyType::U16;
  if (name == "int" || name == "int32") return PlyType::I32;
  if (name == "uint" || name == "uint32") return PlyType::U32;
  if (name == "float" || name == "float32") return PlyType::F32;
  if (name == "double" || name == "float64") return PlyType::F64;
  fail(ErrorKind::Input, "PLY: unknown property type '" + name + "'");
}

std::size_t ply_size(PlyType t) {
  switch (t) {
    case PlyType::I8: case PlyType::U8: return 1;
    case PlyType::I16: case PlyType::U16: return 2;
    case PlyType::I32: case PlyType::U32: case PlyType::F32: return 4;
    case PlyType::F64: return 8;
  }
  return 1;
}

struct PlyProperty {
  std::string name;
  bool isList = false;
  PlyType countType = PlyType::U8;
  PlyType type = PlyType::F32;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

class PlyReader {
 public:
  PlyReader(std::istream& in, int format) : in_(in), format_(format) {}

  double read(PlyType t) {
    if (format_ == 0) {
      double v;
      if (!(in_ >> v)) fail(ErrorKind::Input, "PLY: truncated ascii body");
      return v;
    }
    unsigned char buf[8];
    const std::size_t n = ply_size(t);
    if (!in_.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n)))
      fail(ErrorKind::Input, "PLY: truncated binary body");
    const bool little = format_ == 1;
    if (little != (std::endian::native == std::endian::little)) std::reverse(buf, buf + n);
    switch (t) {
      case PlyType::I8: { std::int8_t v; std::memcpy(&v, buf, 1); return v; }
      case PlyType::U8: { std::uint8_t v; std::memcpy(&v, buf, 1); return v; }
      case PlyType::I16: { std::int16_t v; std::memcpy(&v, buf, 2); return v; }
      case PlyType::U16: { std::uint16_t v; std::memcpy(&v, buf, 2); return v; }
      case PlyType::I32: { std::int32_t v; std::memcpy(&v, buf, 4); return v; }
      case PlyType::U32: { std::uint32_t v; std::memcpy(&v, buf, 4); return v; }
      case PlyType::F32: { float v; std::memcpy(&v, buf, 4); return v; }
      case PlyType::F64: { double v; std::memcpy(&v, buf, 8); return v; }
    }
    return 0.0;
  }

 private:
  std::istream& in_;
  int format_;  // 0 ascii, 1 little endian, 2 big endian
};

RawMesh read_ply(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (trim(line) != "ply") fail(ErrorKind::Input, "PLY: missing magic");
  int format = -1;
  std::vector<PlyElement> elements;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "format") {
      std::string f;
      ls >> f;
      if (f == "ascii") format = 0;
      else if (f == "binary_little_endian") format = 1;
      else if (f == "binary_big_endian") format = 2;
      else fail(ErrorKind::Input, "PLY: unknown format '" + f + "'");
    } else if (tag == "element") {
      PlyElement e;
      ls >> e.name >> e.count;
      elements.push_back(e);
    } else if (tag == "property") {
      if (elements.empty()) fail(ErrorKind::Input, "PLY: property before element");
      PlyProperty p;
      std::string t;
      ls >> t;
      if (t == "list") {
        std::string ct, it;
        ls >> ct >> it >> p.name;
        p.isList = true;
        p.countType = ply_type(ct);
        p.type = ply_type(it);
      } else {
        ls >> p.name;
        p.type = ply_type(t);
      }
      elements.back().properties.push_back(p);
    } else if (tag == "end_header") {
      break;
    }
  }
  if (format < 0) fail(ErrorKind::Input, "PLY: missing format line");

  RawMesh raw;
  PlyReader reader(in, format);
  for (const PlyElement& e : elements) {
    const bool isVertex = e.name == "vertex";
    const bool isFace = e.name == "face";
    int xi = -1, yi = -1, zi = -1, fi = -1;
    for (std::size_t p = 0; p < e.properties.size(); ++p) {
      const auto& name = e.properties[p].name;
      if (name == "x") xi = static_cast<int>(p);
      if (name == "y") yi = static_cast<int>(p);
      if (name == "z") zi = static_cast<int>(p);
      if (name == "vertex_indices" || name == "vertex_index") fi = static_cast<int>(p);
    }
    if (isVertex && (xi < 0 || yi < 0 || zi < 0))
      fail(ErrorKind::Input, "PLY: vertex element lacks x/y/z");
    if (isFace && fi < 0) fail(ErrorKind::Input, "PLY: face element lacks vertex_indices");
    for (std::size_t i = 0; i < e.count; ++i) {
      Vec3 pos = Vec3::Zero();
      std::vector<long> poly;
      for (std::size_t p = 0; p < e.properties.size(); ++p) {
        const PlyProperty& prop = e.properties[p];
        if (prop.isList) {
          const auto n = static_cast<long>(reader.read(prop.countType));
          for (long j = 0; j < n; ++j) {
            const double v = reader.read(prop.type);
            if (static_cast<int>(p) == fi) poly.push_back(static_cast<long>(v));
          }
        } else {
          const double v = reader.read(prop.type);
          if (static_cast<int>(p) == xi) pos.x() = v;
          if (static_cast<int>(p) == yi) pos.y() = v;
          if (static_cast<int>(p) == zi) pos.z() = v;
        }
      }
      if (isVertex) raw.vertices.push_back(pos);
      if (isFace) {
        if (poly.size() < 3)
          fail(ErrorKind::Input, "PLY: face " + std::to_string(i) +
                                     " has fewer than 3 corners and cannot be triangulated");
        raw.polygons.push_back(std::move(poly));
      }
    }
  }
  return raw;
}

}  // namespace

Mesh load_mesh(const std::filesystem::path& path, LoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot open mesh file: " + path.string());

  const std::string ext = to_lower(path.extension().string());
  RawMesh raw;
  if (ext == ".obj") raw = read_obj(in);
  else if (ext == ".ply") raw = read_ply(in);
  else fail(ErrorKind::Input, "unsupported mesh format: " + path.string());

  if (raw.vertices.empty() || raw.polygons.empty())
    fail(ErrorKind::Input, "empty mesh: " + path.string());

  LoadReport local;
  Mesh mesh;
  mesh.id = path.stem().string();
  mesh.vertices = std::move(raw.vertices);
  const long n = static_cast<long>(mesh.vertices.size());
  std::vector<Face> tris;
  for (std::size_t p = 0; p < raw.polygons.size(); ++p) {
    const auto& poly = raw.polygons[p];
    for (long idx : poly)
      if (idx < 0 || idx >= n)
        fail(ErrorKind::Input, path.filename().string() + ": face " + std::to_string(p) +
                                   " index " + std::to_string(idx + 1) + " out of range (" +
                                   std::to_string(n) + " vertices)");
    if (poly.size() > 3) ++local.polygonsSplit;
    for (std::size_t j = 1; j + 1 < poly.size(); ++j)
      tris.push_back({static_cast<int>(poly[0]), static_cast<int>(poly[j]),
                      static_cast<int>(poly[j + 1])});
  }

  mesh.faces = tris;
  const auto areas = face_areas(mesh);
  double total = 0.0;
  for (double a : areas) total += a;
  mesh.faces.clear();
  for (std::size_t f = 0; f < tris.size(); ++f) {
    const Face& t = tris[f];
    const bool repeated = t[0] == t[1] || t[1] == t[2] || t[0] == t[2];
    if (repeated || !(areas[f] > 1e-12 * total)) {
      ++local.degenerateDropped;
      continue;
    }
    mesh.faces.push_back(t);
  }
  if (mesh.faces.empty())
    fail(ErrorKind::Input, "mesh has no non-degenerate faces: " + path.string());
  if (report) *report = local;
  return mesh;
}

namespace {

void write_obj_impl(const std::filesystem::path& path, const Mesh& mesh,
                    const VertexColors* colors) {
  std::string out;
  out.reserve(mesh.vertices.size() * 64 + mesh.faces.size() * 24);
  char buf[160];
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Vec3& p = mesh.vertices[v];
    int n;
    if (colors) {
      const auto& c = (*colors)[v];
      n = std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g %.6f %.6f %.6f\n", p.x(), p.y(),
                        p.z(), c.x(), c.y(), c.z());
    } else {
      n = std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", p.x(), p.y(), p.z());
    }
    out.append(buf, static_cast<std::size_t>(n));
  }
  for (const Face& f : mesh.faces) {
    const int n = std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out.append(buf, static_cast<std::size_t>(n));
  }
  write_text_file(path.string(), out);
}

}  // namespace

void save_colored_obj(const std::filesystem::path& path, const Mesh& mesh,
                      const VertexColors& colors) {
  if (colors.size() != mesh.vertices.size())
    fail(ErrorKind::Invariant, "vertex color count does not match vertex count");
  write_obj_impl(path, mesh, &colors);
}

void save_obj(const std::filesystem::path& path, const Mesh& mesh) {
  write_obj_impl(path, mesh, nullptr);
}

}  // namespace zsc
