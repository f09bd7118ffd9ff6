#include "lookupdb/seed.hpp"

#include <fstream>
#include <system_error>

#include "lookupdb/error.hpp"

namespace lookupdb {

namespace {

constexpr const char* kManifest = R"(# Order-entry demo database.
data_dir: .
locale: id

tables:
  - name: Customer
    source_file: Customer.csv
    primary_key: [CustNo]
    fields:
      - {name: CustNo, type: Integer, required: true}
      - {name: Company, type: Text, required: true}
      - {name: Contact, type: Text}
      - {name: Phone, type: Text}
      - {name: City, type: Text}

  - name: Employee
    source_file: Employee.csv
    primary_key: [EmpNo]
    fields:
      - {name: EmpNo, type: Integer, required: true}
      - {name: FirstName, type: Text, required: true}
      - {name: LastName, type: Text, required: true}
      - {name: PhoneExt, type: Text}
      - {name: HireDate, type: Date}

  - name: Vendors
    source_file: Vendors.csv
    primary_key: [VendorNo]
    fields:
      - {name: VendorNo, type: Integer, required: true}
      - {name: VendorName, type: Text, required: true}
      - {name: City, type: Text}

  - name: Parts
    source_file: Parts.csv
    primary_key: [PartNo]
    fields:
      - {name: PartNo, type: Integer, required: true}
      - {name: VendorNo, type: Integer, required: true}
      - {name: Description, type: Text, required: true}
      - {name: OnHand, type: Integer}
      - {name: Cost, type: Decimal, display_format: "US$ #.#,#"}
      - {name: ListPrice, type: Decimal, display_format: "US$ #.#,#"}

  - name: Orders
    source_file: Orders.csv
    primary_key: [OrderNo]
    fields:
      - {name: OrderNo, type: Integer, required: true}
      - {name: CustNo, type: Integer, required: true}
      - {name: SaleDate, type: Date}
      - {name: EmpNo, type: Integer, required: true}
      - {name: Terms, type: Text}
      - {name: FOB, type: Text}
      - {name: ItemsTotal, type: Decimal, display_format: "US$ #.#,#"}
      - {name: TaxRate, type: Decimal, display_format: "#,#"}
      - {name: Freight, type: Decimal, display_format: "US$ #.#,#"}
      - {name: AmountPaid, type: Decimal, display_format: "US$#.#,#"}

  - name: Items
    source_file: Items.csv
    primary_key: [OrderNo, ItemNo]
    fields:
      - {name: OrderNo, type: Integer, required: true}
      - {name: ItemNo, type: Integer, required: true}
      - {name: PartNo, type: Integer, required: true}
      - {name: NamaBarang, kind: Lookup, type: Text, lookup_binding: parts}
      - {name: Qty, type: Integer, display_format: "#.#"}
      - {name: Discount, type: Decimal, display_format: "#,#"}
      - {name: Harga, kind: Calculated, type: Decimal, display_format: "US$ #.#,#"}

bindings:
  - name: cust
    data_source: Orders
    data_field: CustNo
    list_source: Customer
    list_fields: [CustNo, Company]
    key_field: CustNo
    widget: combo
  - name: emp
    data_source: Orders
    data_field: EmpNo
    list_source: Employee
    list_fields: [EmpNo, FirstName, LastName]
    key_field: EmpNo
    widget: list
  - name: parts
    data_source: Items
    data_field: PartNo
    list_source: Parts
    list_fields: [Description]
    key_field: PartNo
    widget: combo
  - name: vendor
    data_source: Parts
    data_field: VendorNo
    list_source: Vendors
    list_fields: [VendorNo, VendorName]
    key_field: VendorNo
    widget: combo

links:
  - detail_table: Items
    master_table: Orders
    master_fields: [OrderNo]
    detail_fields: [OrderNo]

calc_fields:
  - table: Items
    target_field: Harga
    expression: "((1 - Discount/100) * lookup(Parts, PartNo, ListPrice)) * Qty"
)";

constexpr const char* kCustomer =
    "CustNo,Company,Contact,Phone,City\n"
    "1221,Kauai Dive Shoppe,Erica Norman,808-555-0269,Kapaa Kauai\n"
    "1231,Unisco,George Weathers,809-555-3915,Freeport\n"
    "1351,Sight Diver,Phyllis Spooner,357-6-876708,Kato Paphos\n";

constexpr const char* kEmployee =
    "EmpNo,FirstName,LastName,PhoneExt,HireDate\n"
    "110,Yuki,Ichida,401,1991-02-04\n"
    "113,Mary,Page,845,1991-05-01\n"
    "114,Bill,Parker,247,1991-06-03\n"
    "118,Takashi,Yamamoto,23,1991-07-01\n"
    "121,Roberto,Ferrari,1,1991-07-12\n"
    "127,Michael,Yanowski,492,1991-08-09\n";

constexpr const char* kVendors =
    "VendorNo,VendorName,City\n"
    "2014,Cacor Corporation,Manchester\n"
    "3511,Divers' Supply Shop,Atlanta\n";

constexpr const char* kParts =
    "PartNo,VendorNo,Description,OnHand,Cost,ListPrice\n"
    "1313,3511,Regulator System,165,2400.5,3999.95\n"
    "1314,2014,Second Stage Regulator,98,124.1,365\n"
    "1316,3511,Depth/Pressure Gauge,24,68.3,112.5\n";

constexpr const char* kOrders =
    "OrderNo,CustNo,SaleDate,EmpNo,Terms,FOB,ItemsTotal,TaxRate,Freight,AmountPaid\n"
    "1003,1351,1988-04-12,114,FOB,Sea,1250,4.5,0,0\n"
    "1004,1351,1988-04-17,114,Net 30,Air,730,0,0,0\n"
    "1005,1221,1988-04-20,110,Net 30,Sea,1095,0,0,0\n";

constexpr const char* kItems =
    "OrderNo,ItemNo,PartNo,Qty,Discount\n"
    "1003,1,1313,5,0\n"
    "1004,1,1313,2,10\n"
    "1004,2,1314,1,0\n"
    "1005,1,1314,3,0\n"
    "1005,2,1316,1,5\n";

}  // namespace

std::vector<std::pair<std::string, std::string>> seed_files() {
  return {
      {kSeedManifestFile, kManifest}, {"Customer.csv", kCustomer}, {"Employee.csv", kEmployee},
      {"Vendors.csv", kVendors},      {"Parts.csv", kParts},       {"Orders.csv", kOrders},
      {"Items.csv", kItems},
  };
}

void write_seed(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
  for (const auto& [name, content] : seed_files()) {
    auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
}

}  // namespace lookupdb
