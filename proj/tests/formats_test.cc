#include "inscom/formats.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "inscom/error.h"
#include "test_util.h"

namespace inscom {
namespace {

using inscom_test::Rng;
using inscom_test::TempDir;

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kUnknownId;
}

const std::filesystem::path kData = INSCOM_TEST_DATA_DIR;

TEST(Ppm, OneWhitePixel) {
  const Image img = ParsePpm(std::string("P6 1 1 255\n\xff\xff\xff", 14));
  EXPECT_EQ(img, Image(1, 1, 3, {255, 255, 255}));
}

TEST(Ppm, CommentsAndRoundTrip) {
  Rng rng(1);
  const Image img = inscom_test::RandomImage(rng, 32, 32, 3);
  const std::string bytes = EncodePpm(img);
  EXPECT_EQ(ParsePpm(bytes), img);
  std::string commented = "P6\n# made by hand\n32 32\n255\n";
  commented += bytes.substr(bytes.size() - 32 * 32 * 3);
  EXPECT_EQ(ParsePpm(commented), img);
}

TEST(Ppm, Errors) {
  EXPECT_EQ(CodeOf([] { ParsePpm("P6 1 1 65535\n\0\0\0\0\0\0"); }),
            ErrorCode::kUnsupportedMaxval);
  EXPECT_EQ(CodeOf([] { ParsePpm(std::string("P6 2 1 255\n\1\2\3", 14)); }),
            ErrorCode::kTruncatedData);
  EXPECT_EQ(CodeOf([] { ParsePpm("P3 1 1 255\n1 2 3"); }),
            ErrorCode::kMalformedHeader);
  EXPECT_EQ(CodeOf([] { ParsePpm("P6 x 1 255\n"); }),
            ErrorCode::kMalformedHeader);
  EXPECT_EQ(CodeOf([] { ParsePpm(""); }), ErrorCode::kMalformedHeader);
}

TEST(Pgm, RoundTripAndMaskRules) {
  const std::vector<std::uint8_t> samples = {0, 7, 255, 12};
  const GrayRaster r = ParsePgm(EncodePgm(2, 2, samples));
  EXPECT_EQ(r.width, 2);
  EXPECT_EQ(r.samples, samples);

  const std::vector<std::uint8_t> zeros(16, 0);
  EXPECT_FALSE(ParseMaskPgm(EncodePgm(4, 4, zeros)).Any());
  std::vector<std::uint8_t> one = zeros;
  one[5] = 255;
  EXPECT_EQ(ParseMaskPgm(EncodePgm(4, 4, one)).Popcount(), 1u);
  one[6] = 7;
  EXPECT_EQ(CodeOf([&] { ParseMaskPgm(EncodePgm(4, 4, one)); }),
            ErrorCode::kInvalidMaskValue);

  Mask m(5, 3);
  m.set(2, 4, true);
  EXPECT_EQ(ParseMaskPgm(EncodeMaskPgm(m)), m);
}

TEST(Files, ImageMaskAndSegmentationRoundTrip) {
  TempDir dir("formats");
  Rng rng(2);
  const Image color = inscom_test::RandomImage(rng, 9, 7, 3);
  const Image gray = inscom_test::RandomImage(rng, 9, 7, 1);
  WriteImage(color, dir.path() / "c.ppm");
  WriteImage(gray, dir.path() / "g.pgm");
  EXPECT_EQ(ReadImage(dir.path() / "c.ppm"), color);
  EXPECT_EQ(ReadImage(dir.path() / "g.pgm"), gray);

  Mask m(9, 7);
  m.set(3, 3, true);
  WriteMask(m, dir.path() / "m.pgm");
  EXPECT_EQ(ReadMask(dir.path() / "m.pgm"), m);

  const SegmentationMap seg = inscom_test::RandomSegmentation(rng, 9, 7);
  WriteSegmentation(seg, dir.path() / "s.pgm");
  EXPECT_EQ(ReadSegmentation(dir.path() / "s.pgm", seg.class_table), seg);

  EXPECT_EQ(CodeOf([&] { ReadImage(dir.path() / "missing.ppm"); }),
            ErrorCode::kIo);
  EXPECT_EQ(CodeOf([&] { WriteImage(color, dir.path() / "no" / "x.ppm"); }),
            ErrorCode::kIo);
}

constexpr const char* kMinimal = R"({
  "image": "a.ppm", "segmentation": "a_seg.pgm", "width": 8, "height": 8,
  "class_table": {"0": "street", "1": "woman"},
  "instances": [{"id": 1, "class": "woman", "score": 0.5,
                 "bbox": [0.0, 0.0, 0.5, 0.5], "extra": true}],
  "triplets": []
})";

TEST(Annotation, MinimalRecord) {
  const AnnotationRecord rec = ParseAnnotation(kMinimal);
  EXPECT_EQ(rec.id, "a");
  EXPECT_EQ(rec.graph.instances.size(), 1u);
  EXPECT_EQ(rec.class_table.at(1), "woman");
  EXPECT_EQ(ParseAnnotation(SerializeAnnotation(rec)).graph, rec.graph);
}

TEST(Annotation, MissingBboxNamesItsPath) {
  std::string text = kMinimal;
  text.replace(text.find("\"bbox\""), 6, "\"bbx\"");
  try {
    ParseAnnotation(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingField);
    EXPECT_NE(e.message().find("instances[0].bbox"), std::string::npos);
  }
}

TEST(Annotation, TypeAndInvariantErrors) {
  std::string text = kMinimal;
  text.replace(text.find("\"width\": 8"), 10, "\"width\": \"8\"");
  EXPECT_EQ(CodeOf([&] { ParseAnnotation(text); }), ErrorCode::kTypeMismatch);

  text = kMinimal;
  text.replace(text.find("\"triplets\": []"), 14,
               R"("triplets": [{"subject": 5, "relation": "on", "object": 1}])");
  EXPECT_EQ(CodeOf([&] { ParseAnnotation(text); }),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(CodeOf([] { ParseAnnotation("{not json"); }),
            ErrorCode::kTypeMismatch);
}

TEST(Annotation, RoundTripsRandomGraphs) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    AnnotationRecord rec;
    rec.id = "r" + std::to_string(trial);
    rec.image_path = "x.ppm";
    rec.seg_path = "x_seg.pgm";
    rec.width = 16;
    rec.height = 12;
    rec.class_table = {{0, "street"}, {4, "man"}};
    rec.graph = inscom_test::RandomSceneGraph(rng, 10, 20);
    const AnnotationRecord back = ParseAnnotation(SerializeAnnotation(rec));
    EXPECT_EQ(back.graph, rec.graph);
    EXPECT_EQ(back.class_table, rec.class_table);
    EXPECT_EQ(back.id, rec.id);
  }
}

TEST(Criteria, PedestrianExampleAndDedup) {
  const TaskCriteria c = ParseCriteria(
      R"({"task":"pedestrian_warning","critical_classes":["man","woman","man"],
          "critical_relations":[{"relation":"walking on","object_class":"street"},
                                {"relation":"on","object_class":"crosswalk"}]})");
  EXPECT_EQ(c.task_name, "pedestrian_warning");
  EXPECT_EQ(c.critical_classes, (std::set<std::string>{"man", "woman"}));
  EXPECT_EQ(c.critical_relations,
            (std::set<std::pair<std::string, std::string>>{
                {"walking on", "street"}, {"on", "crosswalk"}}));
  const TaskCriteria back = ParseCriteria(SerializeCriteria(c));
  EXPECT_EQ(back.critical_classes, c.critical_classes);
  EXPECT_EQ(back.critical_relations, c.critical_relations);

  const TaskCriteria empty = ParseCriteria(
      R"({"task":"none","critical_classes":[],"critical_relations":[]})");
  EXPECT_TRUE(empty.critical_classes.empty());
  EXPECT_EQ(CodeOf([] { ParseCriteria(R"({"task":"t","critical_classes":[]})"); }),
            ErrorCode::kMissingField);
  EXPECT_EQ(CodeOf([] {
              ParseCriteria(R"({"task":"t","critical_classes":[1],"critical_relations":[]})");
            }),
            ErrorCode::kTypeMismatch);
}

TEST(Scene, LoadsCommittedFixture) {
  const LoadedScene s = LoadSceneFile(kData / "pedestrian" / "street_scene.json");
  EXPECT_EQ(s.record.id, "street_scene");
  EXPECT_EQ(s.image.width(), 64);
  EXPECT_EQ(s.segmentation.class_table.size(), 5u);
}

TEST(Scene, DeclaredSizeMustMatchFiles) {
  AnnotationRecord rec =
      ParseAnnotation(ReadFileBytes(kData / "pedestrian" / "street_scene.json"));
  rec.width = 65;
  EXPECT_EQ(CodeOf([&] { LoadScene(rec, kData / "pedestrian"); }),
            ErrorCode::kInvariantViolation);
}

TEST(Manifest, LenientAndStrictLoading) {
  TempDir dir("manifest");
  const std::string fixture =
      (kData / "pedestrian" / "street_scene.json").string();
  WriteFileBytes(dir.path() / "m.json",
                 "[\"" + fixture + "\", \"missing.json\"]");
  const auto entries = LoadManifestEntries(dir.path() / "m.json");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_TRUE(entries[0].scene.has_value());
  EXPECT_FALSE(entries[1].scene.has_value());
  EXPECT_EQ(entries[1].error_code, ErrorCode::kIo);
  EXPECT_EQ(CodeOf([&] { LoadManifest(dir.path() / "m.json"); }),
            ErrorCode::kIo);
}

TEST(Csv, NumbersAndQuoting) {
  EXPECT_EQ(FormatNumber(0.5), "0.5");
  EXPECT_EQ(FormatNumber(3.0), "3");
  EXPECT_EQ(FormatNumber(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(FormatNumber(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(FormatNumber(std::nan("")), "nan");
  EXPECT_EQ(CsvQuote("plain"), "plain");
  EXPECT_EQ(CsvQuote("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvQuote("say \"hi\""), "\"say \"\"hi\"\"\"");

  TrialResult row;
  row.image_id = "img,1";
  row.scheme = "inscom";
  row.eta = 0.2;
  row.snr_db = -3;
  row.seed = 4;
  row.payload_symbols = 10;
  row.side_symbol_equiv = 2;
  row.cbr = 0.125;
  row.psnr_db = std::numeric_limits<double>::infinity();
  row.tc_psnr_db = 30.25;
  row.tc_pixel_count = 7;
  EXPECT_EQ(FormatCsvRow(row),
            "\"img,1\",inscom,0.2,-3,4,10,2,0.125,inf,30.25,7,");
  const std::vector<TrialResult> rows = {row};
  EXPECT_EQ(FormatCsv(rows),
            std::string(kCsvHeader) + "\r\n" + FormatCsvRow(row) + "\r\n");
}

}  // namespace
}  // namespace inscom
