package com.demo.app;

import com.demo.util.Strings;
import java.util.List;

public class ReportFormatter {
    private final int width;

    public ReportFormatter(int width) {
        this.width = width;
    }

    public String table(List<String[]> rows) {
        StringBuilder sb = new StringBuilder();
        for (String[] row : rows) {
            for (int i = 0; i < row.length; i++) {
                sb.append(Strings.pad(row[i], width));
                if (i + 1 < row.length) sb.append('|');
            }
            sb.append('\n');
        }
        return sb.toString();
    }

    public String heading(String title) {
        return title.toUpperCase() + "\n" + "=".repeat(title.length()) + "\n";
    }
}
