import { ApiError, CatalogApi } from "./api.js";
import type { DatasetRow, ReportBody } from "./types.js";

/** Data card: every schema field for one record, plus the issue-report form. */
export class DataCardPage {
  constructor(private root: HTMLElement, private api: CatalogApi) {}

  async render(index: number): Promise<void> {
    this.root.innerHTML = "";
    let record: DatasetRow;
    try {
      record = await this.api.record(index);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        const missing = document.createElement("p");
        missing.className = "not-found";
        missing.textContent = `No dataset at index ${index}.`;
        this.root.appendChild(missing);
        return;
      }
      throw err;
    }

    const card = document.createElement("article");
    card.className = "data-card";
    const title = document.createElement("h2");
    title.textContent = typeof record.Name === "string" ? record.Name : `dataset ${index}`;
    card.appendChild(title);

    const fields = document.createElement("dl");
    fields.className = "card-fields";
    for (const [name, value] of Object.entries(record)) {
      const dt = document.createElement("dt");
      dt.textContent = name;
      const dd = document.createElement("dd");
      if (name === "Link" && typeof value === "string" && value.startsWith("http")) {
        const a = document.createElement("a");
        a.href = value;
        a.textContent = value;
        dd.appendChild(a);
      } else {
        dd.textContent = Array.isArray(value) ? value.join(", ") : value === null ? "—" : String(value);
      }
      fields.appendChild(dt);
      fields.appendChild(dd);
    }
    card.appendChild(fields);
    card.appendChild(this.reportForm(index, Object.keys(record)));
    this.root.appendChild(card);
  }

  private reportForm(index: number, fieldNames: string[]): HTMLElement {
    const section = document.createElement("section");
    section.className = "report-section";
    section.innerHTML = "<h3>Report an issue</h3>";

    const form = document.createElement("form");
    form.className = "report-form";

    const fieldSelect = document.createElement("select");
    fieldSelect.className = "report-field";
    const any = document.createElement("option");
    any.value = "";
    any.textContent = "(whole card)";
    fieldSelect.appendChild(any);
    for (const name of fieldNames) {
      const opt = document.createElement("option");
      opt.value = name;
      opt.textContent = name;
      fieldSelect.appendChild(opt);
    }

    const message = document.createElement("textarea");
    message.className = "report-message";
    message.placeholder = "What is wrong?";

    const reporter = document.createElement("input");
    reporter.type = "text";
    reporter.className = "report-reporter";
    reporter.placeholder = "Your handle (optional, leave empty to report anonymously)";

    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Send report";

    const status = document.createElement("p");
    status.className = "report-status";

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const text = message.value.trim();
      if (!text) {
        status.textContent = "A message is required.";
        status.classList.add("report-error");
        return; // blocked client-side; no request is sent
      }
      const body: ReportBody = { dataset_index: index, message: text };
      if (fieldSelect.value) body.field = fieldSelect.value;
      if (reporter.value.trim()) body.reporter = reporter.value.trim();
      void this.api
        .submitReport(body)
        .then((resp) => {
          status.classList.remove("report-error");
          status.textContent = `Report received, id ${resp.id}.`;
          message.value = "";
        })
        .catch((err: Error) => {
          status.classList.add("report-error");
          status.textContent = `Report failed: ${err.message}`;
        });
    });

    form.appendChild(fieldSelect);
    form.appendChild(message);
    form.appendChild(reporter);
    form.appendChild(submit);
    form.appendChild(status);
    section.appendChild(form);
    return section;
  }
}
