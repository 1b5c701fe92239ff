// Wire-format payloads captured from a running catalogue service
// over the standard 8-row fixture (local provider, dim 64, k 3, seed 7).
import type { ClusterPoint, DatasetRow, StatsPayload, TagsPayload } from "../src/types.js";

export const SCHEMA: string[] = [
  "Name",
  "Year",
  "Unit",
  "Dialect",
  "Tasks",
  "Access",
  "License",
  "Host",
  "Domain",
  "Form",
  "Venue",
  "Ethical Risks",
  "Script",
  "Description",
  "Abstract",
  "Link"
];

export const TAGS: TagsPayload = {
  "Name": [
    "ANERcorp",
    "ArSAS",
    "Gumar",
    "KSUCCA",
    "LABR",
    "Shami",
    "TED-ar",
    "Tashkeela"
  ],
  "Year": [
    2004,
    2007,
    2012,
    2016,
    2018,
    2021
  ],
  "Unit": [
    "documents",
    "reviews",
    "sentences",
    "tokens"
  ],
  "Dialect": [
    "Algeria",
    "Bahrain",
    "Classical Arabic",
    "Gulf",
    "Levantine",
    "mixed"
  ],
  "Tasks": [
    "diacritization",
    "dialect identification",
    "language modeling",
    "machine translation",
    "named entity recognition",
    "sentiment analysis",
    "speech act detection",
    "speech recognition"
  ],
  "Access": [
    "Free",
    "Upon-Request"
  ],
  "License": [
    "CC BY 4.0",
    "GPL-2.0",
    "custom",
    "unknown"
  ],
  "Host": [
    "GitHub",
    "other",
    "sourceforge"
  ],
  "Domain": [
    "books",
    "forums",
    "news articles",
    "reviews",
    "social media",
    "transcribed audio",
    "tweets"
  ],
  "Form": [
    "spoken",
    "text"
  ],
  "Venue": [
    "ACL",
    "LREC",
    "other"
  ],
  "Ethical Risks": [
    "High",
    "Low",
    "Medium"
  ],
  "Script": [
    "Arab"
  ],
  "Description": [
    "A Levantine dialect corpus of sentences",
    "A classical corpus for distributional semantics",
    "A large book review corpus",
    "A vocalized classical text collection",
    "Gulf internet novels collection",
    "Named entity annotations over news",
    "Transcribed talks aligned across languages",
    "Tweets annotated for speech acts"
  ],
  "Abstract": [
    "Book reviews rated by stars for sentiment work",
    "Classical books with full diacritics",
    "Classical texts compiled for corpus linguistics",
    "Long form forum novels in Gulf dialects",
    "News wire tokens tagged with entity classes",
    "Sentences collected across the Levant region for dialect studies",
    "Short posts labelled for sentiment and speech acts",
    "Talk transcripts with token level alignment"
  ],
  "Link": [
    "https://example.org/anercorp",
    "https://example.org/arsas",
    "https://example.org/gumar",
    "https://example.org/ksucca",
    "https://example.org/labr",
    "https://example.org/shami",
    "https://example.org/tashkeela",
    "https://example.org/ted-ar"
  ]
};

export const STATS: StatsPayload = {
  "Host": [
    {
      "value": "other",
      "count": 5
    },
    {
      "value": "GitHub",
      "count": 2
    },
    {
      "value": "sourceforge",
      "count": 1
    }
  ],
  "Year": [
    {
      "value": 2007,
      "count": 2
    },
    {
      "value": 2018,
      "count": 2
    },
    {
      "value": 2004,
      "count": 1
    },
    {
      "value": 2012,
      "count": 1
    },
    {
      "value": 2016,
      "count": 1
    },
    {
      "value": 2021,
      "count": 1
    }
  ],
  "Access": [
    {
      "value": "Free",
      "count": 7
    },
    {
      "value": "Upon-Request",
      "count": 1
    }
  ],
  "Tasks": [
    {
      "value": "dialect identification",
      "count": 2
    },
    {
      "value": "machine translation",
      "count": 2
    },
    {
      "value": "sentiment analysis",
      "count": 2
    },
    {
      "value": "diacritization",
      "count": 1
    },
    {
      "value": "language modeling",
      "count": 1
    },
    {
      "value": "named entity recognition",
      "count": 1
    },
    {
      "value": "speech act detection",
      "count": 1
    },
    {
      "value": "speech recognition",
      "count": 1
    }
  ],
  "Domain": [
    {
      "value": "books",
      "count": 2
    },
    {
      "value": "forums",
      "count": 1
    },
    {
      "value": "news articles",
      "count": 1
    },
    {
      "value": "reviews",
      "count": 1
    },
    {
      "value": "social media",
      "count": 1
    },
    {
      "value": "transcribed audio",
      "count": 1
    },
    {
      "value": "tweets",
      "count": 1
    }
  ],
  "License": [
    {
      "value": "custom",
      "count": 4
    },
    {
      "value": "unknown",
      "count": 2
    },
    {
      "value": "CC BY 4.0",
      "count": 1
    },
    {
      "value": "GPL-2.0",
      "count": 1
    }
  ],
  "Dialect": [
    {
      "value": "Classical Arabic",
      "count": 2
    },
    {
      "value": "mixed",
      "count": 2
    },
    {
      "value": "Algeria",
      "count": 1
    },
    {
      "value": "Bahrain",
      "count": 1
    },
    {
      "value": "Gulf",
      "count": 1
    },
    {
      "value": "Levantine",
      "count": 1
    }
  ],
  "Form": [
    {
      "value": "text",
      "count": 7
    },
    {
      "value": "spoken",
      "count": 1
    }
  ],
  "Venue": [
    {
      "value": "LREC",
      "count": 3
    },
    {
      "value": "other",
      "count": 3
    },
    {
      "value": "ACL",
      "count": 2
    }
  ],
  "Ethical Risks": [
    {
      "value": "Low",
      "count": 5
    },
    {
      "value": "Medium",
      "count": 2
    },
    {
      "value": "High",
      "count": 1
    }
  ],
  "Script": [
    {
      "value": "Arab",
      "count": 8
    }
  ]
};

export const CLUSTERS: ClusterPoint[] = [
  {
    "index": 0,
    "name": "Shami",
    "x": -0.35053394137348814,
    "y": 0.5020920327633137,
    "cluster": 0
  },
  {
    "index": 1,
    "name": "TED-ar",
    "x": -0.09586441267178117,
    "y": 0.4213677905861208,
    "cluster": 0
  },
  {
    "index": 2,
    "name": "LABR",
    "x": 0.22501294641916497,
    "y": -0.4624031897154634,
    "cluster": 2
  },
  {
    "index": 3,
    "name": "Tashkeela",
    "x": 0.6422799868302272,
    "y": 0.2640843323758868,
    "cluster": 2
  },
  {
    "index": 4,
    "name": "KSUCCA",
    "x": 0.6368090242757205,
    "y": -0.04837048693025158,
    "cluster": 2
  },
  {
    "index": 5,
    "name": "Gumar",
    "x": -0.23039158500372547,
    "y": -0.6549164032924906,
    "cluster": 0
  },
  {
    "index": 6,
    "name": "ANERcorp",
    "x": -0.11862526205223715,
    "y": 0.02584974281276901,
    "cluster": 1
  },
  {
    "index": 7,
    "name": "ArSAS",
    "x": -0.7086867564238806,
    "y": -0.047703818599884706,
    "cluster": 0
  }
];

export const RECORD2: DatasetRow = {
  "Name": "LABR",
  "Year": 2018,
  "Unit": "reviews",
  "Dialect": "mixed",
  "Tasks": [
    "sentiment analysis"
  ],
  "Access": "Free",
  "License": "unknown",
  "Host": "GitHub",
  "Domain": "reviews",
  "Form": "text",
  "Venue": "ACL",
  "Ethical Risks": "Medium",
  "Script": "Arab",
  "Description": "A large book review corpus",
  "Abstract": "Book reviews rated by stars for sentiment work",
  "Link": "https://example.org/labr"
};

export const PROJECTED: DatasetRow[] = [
  {
    "Name": "Shami",
    "Year": 2018,
    "Unit": "sentences"
  },
  {
    "Name": "TED-ar",
    "Year": 2004,
    "Unit": "tokens"
  },
  {
    "Name": "LABR",
    "Year": 2018,
    "Unit": "reviews"
  },
  {
    "Name": "Tashkeela",
    "Year": 2007,
    "Unit": "tokens"
  },
  {
    "Name": "KSUCCA",
    "Year": 2012,
    "Unit": "tokens"
  },
  {
    "Name": "Gumar",
    "Year": 2016,
    "Unit": "documents"
  },
  {
    "Name": "ANERcorp",
    "Year": 2007,
    "Unit": "tokens"
  },
  {
    "Name": "ArSAS",
    "Year": 2021,
    "Unit": "sentences"
  }
];
